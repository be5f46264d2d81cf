#pragma once

#include "tht/extrapolate.hpp"
#include "tht/lagrange.hpp"
#include "tht/least_squares.hpp"
#include "tht/mask.hpp"
#include "tht/report.hpp"
