#pragma once

#include "effix/ballot.hpp"
#include "effix/dichotomous.hpp"
#include "effix/efficiency.hpp"
#include "effix/errors.hpp"
#include "effix/io.hpp"
#include "effix/lottery.hpp"
#include "effix/lp.hpp"
#include "effix/oracle.hpp"
#include "effix/pareto.hpp"
#include "effix/profile.hpp"
#include "effix/random.hpp"
#include "effix/rational.hpp"
#include "effix/single_peaked.hpp"
