#pragma once

#include "anyangle/bench.hpp"
#include "anyangle/candidate_vertices.hpp"
#include "anyangle/geometry.hpp"
#include "anyangle/grid_map.hpp"
#include "anyangle/open_list.hpp"
#include "anyangle/preprocess.hpp"
#include "anyangle/random.hpp"
#include "anyangle/render.hpp"
#include "anyangle/report.hpp"
#include "anyangle/search.hpp"
#include "anyangle/visibility.hpp"
