#pragma once

#include "eulermean/cesaro.hpp"
#include "eulermean/characters.hpp"
#include "eulermean/common.hpp"
#include "eulermean/experiments.hpp"
#include "eulermean/kahan.hpp"
#include "eulermean/numtheory.hpp"
#include "eulermean/special.hpp"
