#include <catch2/catch_amalgamated.hpp>
#include "orlicz/orlicz.hpp"
