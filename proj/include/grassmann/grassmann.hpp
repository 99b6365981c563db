#ifndef GRASSMANN_GRASSMANN_HPP
#define GRASSMANN_GRASSMANN_HPP

// Umbrella header for the numerical library. The CLI (cli.hpp) additionally
// needs CLI11 on the include path and is not pulled in here.

#include "grassmann/dataset.hpp"
#include "grassmann/error.hpp"
#include "grassmann/io.hpp"
#include "grassmann/kernels.hpp"
#include "grassmann/lp_oracle.hpp"
#include "grassmann/matrix.hpp"
#include "grassmann/mds.hpp"
#include "grassmann/pipeline.hpp"
#include "grassmann/rng.hpp"
#include "grassmann/ssvm.hpp"
#include "grassmann/subspace.hpp"
#include "grassmann/svg_plot.hpp"

#endif  // GRASSMANN_GRASSMANN_HPP
