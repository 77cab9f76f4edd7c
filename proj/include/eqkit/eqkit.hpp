#pragma once

#include "eqkit/numeric.hpp"
#include "eqkit/polynomial.hpp"
#include "eqkit/graph.hpp"
#include "eqkit/generators.hpp"
#include "eqkit/graph_io.hpp"
#include "eqkit/linalg.hpp"
#include "eqkit/charpoly.hpp"
#include "eqkit/algebraic.hpp"
#include "eqkit/canonical.hpp"
#include "eqkit/spectral_order.hpp"
#include "eqkit/equiangular.hpp"
#include "eqkit/switching.hpp"
#include "eqkit/multiplicity.hpp"
