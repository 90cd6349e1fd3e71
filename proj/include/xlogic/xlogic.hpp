#pragma once

#include "xlogic/decision_graph.hpp"
#include "xlogic/linear.hpp"
#include "xlogic/oracle.hpp"
#include "xlogic/reasons.hpp"
#include "xlogic/io/formula_document.hpp"
#include "xlogic/io/model_document.hpp"
#include "xlogic/io/render.hpp"
