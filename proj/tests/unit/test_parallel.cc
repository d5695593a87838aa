#include "doctest.h"

#include <stdexcept>
#include <string>

#include "skbforge/parallel.h"

using skbforge::parallel_map;

TEST_CASE("results come back in index order") {
  for (int jobs : {1, 2, 3, 8, 64}) {
    auto v = parallel_map(100, jobs, [](std::size_t i) { return i * i; });
    REQUIRE(v.size() == 100);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
  }
  CHECK(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
}

TEST_CASE("lowest failing index wins") {
  for (int jobs : {1, 4, 16}) {
    try {
      parallel_map(50, jobs, [](std::size_t i) -> int {
        if (i == 7 || i == 31 || i == 49) throw std::runtime_error(std::to_string(i));
        return 0;
      });
      FAIL("expected throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
}
