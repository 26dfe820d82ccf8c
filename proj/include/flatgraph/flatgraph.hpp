#pragma once

#include "flatgraph/rational.hpp"
#include "flatgraph/matrix.hpp"
#include "flatgraph/graph.hpp"
#include "flatgraph/homology.hpp"
#include "flatgraph/flat_morphism.hpp"
#include "flatgraph/lifting.hpp"
#include "flatgraph/transfer.hpp"
#include "flatgraph/semistable.hpp"
