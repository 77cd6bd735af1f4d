#include <gtest/gtest.h>

#include "support/properties.hpp"

using namespace gptlab;

TEST(Properties, AllHoldOnRandomInstances)
{
    std::size_t cases = 0;
    for (const props::PropertyResult& r : props::run_all(20261014, 150))
    {
        cases += r.cases;
        EXPECT_EQ(r.failures, 0u) << r.name << ": " << r.first_failure;
    }
    EXPECT_GE(cases, 1000u);
}
