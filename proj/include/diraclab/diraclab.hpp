#pragma once

#include "diraclab/common.hpp"
#include "diraclab/config.hpp"
#include "diraclab/counterexample.hpp"
#include "diraclab/fock.hpp"
#include "diraclab/gauge.hpp"
#include "diraclab/gaussian.hpp"
#include "diraclab/lattice.hpp"
#include "diraclab/report.hpp"
#include "diraclab/suite.hpp"
#include "diraclab/verify.hpp"
