#pragma once

#include "qrcut/combinatorics.hpp"
#include "qrcut/exact_matrix.hpp"
#include "qrcut/hypergraph.hpp"
#include "qrcut/intersection.hpp"
#include "qrcut/johnson.hpp"
#include "qrcut/linalg.hpp"
#include "qrcut/random.hpp"
#include "qrcut/rational.hpp"
#include "qrcut/structure.hpp"
