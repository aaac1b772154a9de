#pragma once

#include "sortsweep/appendix.hpp"
#include "sortsweep/cnf.hpp"
#include "sortsweep/dimacs.hpp"
#include "sortsweep/expand.hpp"
#include "sortsweep/harness.hpp"
#include "sortsweep/kv.hpp"
#include "sortsweep/oracle.hpp"
#include "sortsweep/permute_sort.hpp"
#include "sortsweep/reduce.hpp"
