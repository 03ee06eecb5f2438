#include "catch_amalgamated.hpp"

#include "fluxon/io.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace fluxon::io;

TEST_CASE("format_double round-trips", "[io]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = mant(rng) * std::pow(10.0, expo(rng));
        const std::string s = format_double(v);
        double back = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("sha256 matches the standard test vectors", "[io]") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("csv writer", "[io]") {
    CsvWriter w({"a", "b", "c", "d"});
    w.row({1.5, 2LL, std::string("x"), true});
    w.row({std::numeric_limits<double>::quiet_NaN(), -3LL, std::string("y"), false});
    CHECK(w.rows() == 2);
    CHECK(w.str() == "a,b,c,d\n1.5,2,x,true\nnan,-3,y,false\n");
    CHECK_THROWS_AS(w.row({1.0, 2.0}), std::invalid_argument);
    CHECK(w.rows() == 2);
}

TEST_CASE("write_file creates directories and reports the digest", "[io]") {
    const auto dir = std::filesystem::temp_directory_path() / "fluxon_test_io" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    const auto f = write_file(dir, "hello.txt", "abc");
    CHECK(f.name == "hello.txt");
    CHECK(f.bytes == 3);
    CHECK(f.sha256 == sha256_hex("abc"));
    std::ifstream in(dir / "hello.txt", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "abc");
    std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("parallel_for visits every index once", "[io]") {
    for (unsigned threads : {1u, 2u, 4u}) {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
    parallel_for(0, 3, [](std::size_t) { FAIL("body must not run"); });
}

TEST_CASE("parallel_for rethrows a worker exception", "[io]") {
    for (unsigned threads : {1u, 3u}) {
        CHECK_THROWS_AS(parallel_for(50, threads,
                                     [](std::size_t i) {
                                         if (i == 17) throw std::domain_error("boom");
                                     }),
                        std::domain_error);
    }
}
