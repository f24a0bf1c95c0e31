#ifndef PAGERANK_LAB_PAGERANK_LAB_HPP
#define PAGERANK_LAB_PAGERANK_LAB_HPP

#include "chart.hpp"
#include "csv.hpp"
#include "graph.hpp"
#include "norms.hpp"
#include "pagerank.hpp"
#include "stats.hpp"
#include "sweep.hpp"

#endif
