#include <gtest/gtest.h>

#include "../common/properties.hpp"

using namespace hk;

namespace {

void expect_clean(const props::SuiteResult& r, int min_cases) {
  EXPECT_GE(r.cases, min_cases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}

}  // namespace

TEST(Properties, ColengthOracle) { expect_clean(props::colength_oracle_suite(20240901), 20); }
TEST(Properties, ColengthOracleOtherSeed) { expect_clean(props::colength_oracle_suite(7), 20); }
TEST(Properties, FrobeniusFastVsNaive) { expect_clean(props::frobenius_suite(20240902), 50); }
TEST(Properties, SeriesRoundTrips) { expect_clean(props::series_roundtrip_suite(20240903), 100); }
TEST(Properties, ParserRoundTrip) { expect_clean(props::parser_roundtrip_suite(20240904), 100); }
