#include <doctest.h>
TEST_CASE("stub") {}
