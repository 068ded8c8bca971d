#ifndef WULFF_WULFF_HPP
#define WULFF_WULFF_HPP

#include "wulff/vector.hpp"
#include "wulff/integrand.hpp"
#include "wulff/sphere_grid.hpp"
#include "wulff/transforms.hpp"
#include "wulff/convex_region.hpp"
#include "wulff/crystal.hpp"
#include "wulff/path.hpp"
#include "wulff/geodesics.hpp"
#include "wulff/isoperimetry.hpp"
#include "wulff/lattice_oracle.hpp"
#include "wulff/io.hpp"

#endif  // WULFF_WULFF_HPP
