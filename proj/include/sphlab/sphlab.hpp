#pragma once

#include "sphlab/core/error.hpp"
#include "sphlab/core/parallel.hpp"
#include "sphlab/estimates/fit.hpp"
#include "sphlab/estimates/multilinear.hpp"
#include "sphlab/estimates/sweeps.hpp"
#include "sphlab/evolution/io.hpp"
#include "sphlab/evolution/linear.hpp"
#include "sphlab/evolution/nls.hpp"
#include "sphlab/evolution/nonlinearity.hpp"
#include "sphlab/evolution/strichartz.hpp"
#include "sphlab/evolution/trajectory.hpp"
#include "sphlab/evolution/xsb.hpp"
#include "sphlab/harmonics/families.hpp"
#include "sphlab/harmonics/gauss.hpp"
#include "sphlab/harmonics/special.hpp"
#include "sphlab/illposedness/inflation.hpp"
#include "sphlab/lattice/counting.hpp"
#include "sphlab/lattice/sweep.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/manifold.hpp"
#include "sphlab/spectral/norms.hpp"
#include "sphlab/spectral/serialize.hpp"
#include "sphlab/spectral/transform.hpp"
