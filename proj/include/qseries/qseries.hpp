#pragma once

#include "corpus.hpp"
#include "errors.hpp"
#include "eta.hpp"
#include "evaluate.hpp"
#include "expr.hpp"
#include "oracles.hpp"
#include "series.hpp"
#include "verify.hpp"
