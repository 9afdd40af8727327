#pragma once

#include "xsat/bench.hpp"
#include "xsat/error.hpp"
#include "xsat/formula.hpp"
#include "xsat/generator.hpp"
#include "xsat/io.hpp"
#include "xsat/kernel.hpp"
#include "xsat/linear_system.hpp"
#include "xsat/oracle.hpp"
#include "xsat/reductions.hpp"
#include "xsat/report.hpp"
#include "xsat/substitution.hpp"
#include "xsat/verify.hpp"
