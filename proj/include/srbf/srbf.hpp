#pragma once

#include "srbf/activations.hpp"
#include "srbf/cycles.hpp"
#include "srbf/duality.hpp"
#include "srbf/errors.hpp"
#include "srbf/exact_linalg.hpp"
#include "srbf/geometry.hpp"
#include "srbf/network.hpp"
#include "srbf/point_io.hpp"
#include "srbf/quadrature.hpp"
