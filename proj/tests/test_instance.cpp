#include <doctest.h>

#include "helpers.hpp"
#include "kswap/error.hpp"
#include "kswap/instance.hpp"

using namespace kswap;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_argument;
}
}  // namespace

TEST_SUITE("instance") {

TEST_CASE("uniform generation is deterministic") {
  CHECK(generate_uniform(3, 2, 17) == generate_uniform(3, 2, 17));
  CHECK(generate_uniform(3, 2, 17) != generate_uniform(3, 2, 18));
}

TEST_CASE("single uniform job stays on the grid") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = generate_uniform(1, 1, seed);
    REQUIRE(inst.job_count() == 1);
    CHECK(inst.p(0).units() >= 1);
    CHECK(inst.p(0).units() <= int128(1) << 53);
  }
}

TEST_CASE("uniform draws have mean near one half") {
  const auto inst = generate_uniform(10000, 1, 2024);
  long double total = 0;
  for (const auto p : inst.jobs) total += to_double(p, inst.scale_log2);
  const double mean = static_cast<double>(total / 10000);
  CHECK(mean >= 0.48);
  CHECK(mean <= 0.52);
}

TEST_CASE("smoothed with phi 1 and zero bases equals uniform") {
  const auto bases = make_bases(BasePattern::zero, 7, Rational::integer(1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = generate_smoothed(bases, 3, Rational::integer(1), seed);
    auto u = generate_uniform(7, 3, seed);
    CHECK(s.jobs == u.jobs);
  }
}

TEST_CASE("smoothed support is the half-open interval") {
  const Rational phi = Rational::integer(8);
  const std::vector<Rational> bases(6, Rational{1, 2});
  const Exact lo(int128(1) << 52);
  const Exact hi(int128(5) << 50);  // 0.625
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto inst = generate_smoothed(bases, 2, phi, seed);
    for (const auto p : inst.jobs) {
      CHECK(p > lo);
      CHECK(p <= hi);
    }
  }
}

TEST_CASE("smoothed phi 8 never draws below one half for a shifted job") {
  const Rational phi = Rational::integer(8);
  auto bases = make_bases(BasePattern::clustered, 6, phi);
  CHECK(bases[0] == Rational{7, 8});
  bases[0] = Rational{1, 2};
  const Exact half(int128(1) << 52);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed)
    if (generate_smoothed(bases, 2, phi, seed).p(0) <= half) ++hits;
  CHECK(hits == 0);
}

TEST_CASE("smoothed rejects bases above 1 - 1/phi") {
  const std::vector<Rational> bases{Rational{0, 1}, Rational{9, 10}};
  CHECK(code_of([&] { generate_smoothed(bases, 2, Rational::integer(8), 1); }) == ErrorCode::base_out_of_range);
  const std::vector<Rational> negative{Rational{-1, 8}};
  CHECK(code_of([&] { generate_smoothed(negative, 2, Rational::integer(8), 1); }) == ErrorCode::base_out_of_range);
  CHECK_THROWS_AS(generate_smoothed(bases, 2, Rational{1, 2}, 1), Error);
}

TEST_CASE("spread bases cover [0, 1 - 1/phi]") {
  const auto b = make_bases(BasePattern::spread, 5, Rational::integer(4));
  CHECK(b.front() == Rational::integer(0));
  CHECK(b.back() == Rational{3, 4});
  CHECK(b[2] == Rational{3, 8});
}

TEST_CASE("write then parse is the identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_uniform(9, 3, seed);
    const auto text = write_instance(inst);
    CHECK(parse_instance(text) == inst);
    CHECK(write_instance(parse_instance(text)) == text);
  }
  const auto wide = generate_uniform(4, 2, 5, 80);
  CHECK(parse_instance(write_instance(wide)) == wide);
}

TEST_CASE("large numerators are written as strings") {
  const auto inst = make_instance(2, 60, {Exact(int128(1) << 59), Exact(3)});
  const auto text = write_instance(inst);
  CHECK(text.find("\"576460752303423488\"") != std::string::npos);
  CHECK(text.find("\"3\"") == std::string::npos);
}

TEST_CASE("float input converts exactly") {
  const auto inst = parse_instance(R"({"m": 2, "jobs_float": [0.5]})");
  CHECK(inst.scale_log2 == 53);
  CHECK(inst.p(0) == Exact(int128(1) << 52));
  const auto fine = parse_instance(R"({"m": 2, "jobs_float": [0.1]})");
  CHECK(fine.scale_log2 == 55);
  CHECK(std::ldexp(static_cast<double>(fine.p(0).units()), -fine.scale_log2) == 0.1);
}

TEST_CASE("parse rejects bad documents") {
  CHECK(code_of([] { parse_instance(R"({"m": 2, "scale_log2": 53, "jobs": [0]})"); }) ==
        ErrorCode::non_positive_time);
  CHECK(code_of([] { parse_instance(R"({"m": 2, "jobs_float": [0.0]})"); }) == ErrorCode::non_positive_time);
  CHECK(code_of([] { parse_instance(R"({"m": 2, "scale_log2": 53, "jobs": [-4]})"); }) ==
        ErrorCode::non_positive_time);
  CHECK(code_of([] { parse_instance("{not json"); }) == ErrorCode::malformed_document);
  CHECK(code_of([] { parse_instance(R"({"scale_log2": 53, "jobs": [1]})"); }) == ErrorCode::malformed_document);
  CHECK(code_of([] { parse_instance(R"({"m": 2, "scale_log2": 0, "jobs": [1]})"); }) ==
        ErrorCode::inconsistent_scale);
  CHECK(code_of([] { parse_instance(R"({"m": 2, "scale_log2": 2, "jobs": [5]})"); }) ==
        ErrorCode::inconsistent_scale);
  CHECK_THROWS_AS(parse_instance(R"({"m": 0, "scale_log2": 53, "jobs": [1]})"), Error);
}

TEST_CASE("total sums exactly") {
  const auto inst = th::floats({0.5, 0.25, 0.125}, 2);
  CHECK(inst.total() == th::dy(inst, 0.875));
  CHECK(inst.one() == Exact(int128(1) << inst.scale_log2));
}

}
