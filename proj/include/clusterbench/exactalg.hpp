#pragma once

// Exact sparse Laurent polynomial and rational-function arithmetic over Q.

#include "clusterbench/laurent.hpp"
#include "clusterbench/rational.hpp"
#include "clusterbench/rational_fn.hpp"
