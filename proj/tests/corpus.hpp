#pragma once

#include <array>

// Twenty integral models, each with v_p(disc) < 12 at every p (so already minimal).
inline constexpr std::array<const char*, 20> curve_corpus = {
    "[1,0,1,0,0]",     "[1,0,1,-5,-8]",  "[0,-1,1,-10,-20]", "[0,-1,1,0,0]",  "[1,0,1,4,-6]",
    "[1,1,1,-10,-10]", "[1,-1,1,-1,-14]", "[0,1,1,-9,-15]",  "[0,1,0,4,4]",   "[1,0,0,-4,-1]",
    "[0,-1,0,-4,4]",   "[1,-1,1,-3,3]",  "[0,0,1,0,-7]",     "[1,0,1,1,2]",   "[0,0,1,-7,6]",
    "[0,0,0,0,1]",     "[0,0,1,-1,0]",   "[0,1,1,0,0]",      "[1,-1,0,-2,-1]", "[0,0,0,1,0]",
};
