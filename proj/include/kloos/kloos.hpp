#pragma once

#include "kloos/bigint.hpp"
#include "kloos/char_sums.hpp"
#include "kloos/check.hpp"
#include "kloos/code_engine.hpp"
#include "kloos/constants.hpp"
#include "kloos/eisenstein.hpp"
#include "kloos/errors.hpp"
#include "kloos/finite_field.hpp"
#include "kloos/group_oracle.hpp"
#include "kloos/moment_recursion.hpp"
#include "kloos/parallel.hpp"
#include "kloos/trace_profile.hpp"
