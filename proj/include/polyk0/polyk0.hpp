#pragma once

/// Umbrella header for the polyk0 library.

#include "integer.hpp"
#include "matrix.hpp"
#include "linalg.hpp"
#include "abelian_group.hpp"
#include "monoid.hpp"
#include "monoid_ring.hpp"
#include "polymap.hpp"
#include "k0.hpp"
#include "functors.hpp"
#include "simplicial.hpp"
#include "symmetric.hpp"
