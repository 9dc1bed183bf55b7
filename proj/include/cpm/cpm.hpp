#pragma once

#include "cpm/condenser.hpp"
#include "cpm/constraints.hpp"
#include "cpm/errors.hpp"
#include "cpm/graph.hpp"
#include "cpm/graph_miner.hpp"
#include "cpm/io.hpp"
#include "cpm/itemset_miner.hpp"
#include "cpm/min_support.hpp"
#include "cpm/pattern.hpp"
#include "cpm/sequence_miner.hpp"
#include "cpm/symbol_table.hpp"
#include "cpm/tiler.hpp"
