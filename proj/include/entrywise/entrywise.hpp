#pragma once

#include "entrywise/errors.hpp"
#include "entrywise/hadamard.hpp"
#include "entrywise/matrix.hpp"
#include "entrywise/partitions.hpp"
#include "entrywise/psd.hpp"
#include "entrywise/rayleigh.hpp"
#include "entrywise/sampling.hpp"
#include "entrywise/scalar.hpp"
#include "entrywise/schur.hpp"
#include "entrywise/strata.hpp"
#include "entrywise/threshold.hpp"
