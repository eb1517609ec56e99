#pragma once

#include "vista/analysis.hpp"
#include "vista/backend.hpp"
#include "vista/baseline.hpp"
#include "vista/cache.hpp"
#include "vista/candidates.hpp"
#include "vista/dataset.hpp"
#include "vista/digest.hpp"
#include "vista/error.hpp"
#include "vista/graph.hpp"
#include "vista/graph_io.hpp"
#include "vista/inline_format.hpp"
#include "vista/prediction_table.hpp"
#include "vista/prompts.hpp"
#include "vista/runner.hpp"
#include "vista/scoring.hpp"
#include "vista/svg.hpp"
#include "vista/topology.hpp"
#include "vista/utf8.hpp"
#include "vista/validate.hpp"
#include "vista/verify_spans.hpp"
