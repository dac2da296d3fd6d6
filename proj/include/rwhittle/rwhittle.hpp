#pragma once

#include "rwhittle/error.hpp"
#include "rwhittle/params.hpp"
#include "rwhittle/format.hpp"
#include "rwhittle/random.hpp"
#include "rwhittle/fft.hpp"
#include "rwhittle/spectral.hpp"
#include "rwhittle/simulate.hpp"
#include "rwhittle/periodogram.hpp"
#include "rwhittle/optimize.hpp"
#include "rwhittle/estimators.hpp"
#include "rwhittle/experiments.hpp"
#include "rwhittle/io.hpp"
