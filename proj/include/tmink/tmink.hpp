#ifndef TMINK_TMINK_HPP
#define TMINK_TMINK_HPP

#include "tmink/boundary_measure.hpp"
#include "tmink/error.hpp"
#include "tmink/geometry.hpp"
#include "tmink/mesh.hpp"
#include "tmink/solver.hpp"
#include "tmink/torsion_fem.hpp"
#include "tmink/verify.hpp"

#endif  // TMINK_TMINK_HPP
