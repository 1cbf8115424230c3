#pragma once

#include "qlog/formula.hpp"
#include "qlog/profile.hpp"
#include "qlog/construct.hpp"
#include "qlog/subspace.hpp"
#include "qlog/valuation.hpp"
#include "qlog/dbar.hpp"
#include "qlog/json_io.hpp"
#include "qlog/verify.hpp"
