#pragma once

#include "opineq/check_result.hpp"
#include "opineq/constants.hpp"
#include "opineq/errors.hpp"
#include "opineq/format.hpp"
#include "opineq/hermitian.hpp"
#include "opineq/inequalities.hpp"
#include "opineq/maps.hpp"
#include "opineq/means.hpp"
#include "opineq/monotone.hpp"
#include "opineq/norms.hpp"
#include "opineq/report.hpp"
#include "opineq/sampling.hpp"
#include "opineq/suite.hpp"
