#pragma once

#include "fnn/expression.hpp"
#include "fnn/fourier.hpp"
#include "fnn/model.hpp"
#include "fnn/objective.hpp"
#include "fnn/optimize.hpp"
#include "fnn/pde.hpp"
#include "fnn/random.hpp"
#include "fnn/serialize.hpp"
#include "fnn/stats.hpp"
#include "fnn/svg.hpp"
