#pragma once

#include "lensgraph/base_layout.hpp"
#include "lensgraph/canonical_json.hpp"
#include "lensgraph/error.hpp"
#include "lensgraph/geometry.hpp"
#include "lensgraph/graph.hpp"
#include "lensgraph/graph_io.hpp"
#include "lensgraph/lens.hpp"
#include "lensgraph/normalize.hpp"
#include "lensgraph/protocol.hpp"
#include "lensgraph/scene.hpp"
#include "lensgraph/session.hpp"
#include "lensgraph/similarity.hpp"
#include "lensgraph/svg.hpp"
#include "lensgraph/transition.hpp"
#include "lensgraph/usecase.hpp"
