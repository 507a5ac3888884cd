#pragma once

// Trajectory mini-language: "c1=u; c2=u-1.7; c3=0.7". Expressions use the
// variable u, numeric literals, + - * and unary minus, with parentheses
// nested at most two deep. Each coordinate must be a polynomial of degree
// at most 3.

#include <array>
#include <string>
#include <string_view>

#include "qcorr/trajectories.hpp"

namespace qcorr::cli {

Polynomial parse_polynomial(std::string_view expr);
std::array<Polynomial, 3> parse_coordinates(std::string_view spec);

}  // namespace qcorr::cli
