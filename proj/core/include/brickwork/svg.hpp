#pragma once

#include "brickwork/fan.hpp"

#include <string>

namespace brickwork {

// section of the fan by x+y+z = 1 drawn in the triangle e1 (top), e2 (right), e3 (left);
// one labelled dot per ray and one segment per cone edge
std::string render_svg(const Fan& fan);

}  // namespace brickwork
