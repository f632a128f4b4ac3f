#include <doctest.h>

#include <sstream>

#include "stabsel/csv.hpp"
#include "stabsel/error.hpp"
#include "support.hpp"

using namespace stabsel;

TEST_CASE("reads a header, an optional index column and numeric fields")
{
    std::istringstream in("t,y,x1,x2\n1,0.5,1e3,-2\n2, 1.5 ,+3,4\n\n3,2,5,6\n");
    const auto table = read_csv(in);
    CHECK(table.names == std::vector<std::string>{"y", "x1", "x2"});
    REQUIRE(table.index);
    CHECK(*table.index == std::vector<double>{1, 2, 3});
    CHECK(table.rows() == 3);
    CHECK(table.columns[1] == std::vector<double>{1000, 3, 5});
    CHECK(table.columns[0][1] == 1.5);

    std::istringstream plain("a,b\n1,2\n");
    const auto no_index = read_csv(plain);
    CHECK_FALSE(no_index.index);
    CHECK(no_index.names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("malformed input raises DataError")
{
    const char* bad[] = {
        "",                      // empty
        "a,b\n",                 // no rows
        "a,a\n1,2\n",            // duplicate names
        "a,b\n1\n",              // short row
        "a,b\n1,\n",             // missing value
        "a,b\n1,x\n",            // not a number
        "a,b\n1,nan\n",          // non-finite
        "t,a\n2,1\n1,2\n",       // index not increasing (rejected when converted)
    };
    for (int i = 0; i < 7; ++i) {
        std::istringstream in(bad[i]);
        CHECK_THROWS_AS(read_csv(in), DataError);
    }
    std::istringstream in(bad[7]);
    const auto table = read_csv(in);
    CHECK_THROWS_AS(to_multiseries(table, {"a"}, {}), DataError);
}

TEST_CASE("unknown columns are all reported before any work")
{
    std::istringstream in("y,x\n1,2\n3,4\n");
    const auto table = read_csv(in);
    try {
        to_multiseries(table, {"y", "nope"}, {"x", "missing"});
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("nope") != std::string::npos);
        CHECK(msg.find("missing") != std::string::npos);
    }
}

TEST_CASE("write_csv round-trips values exactly")
{
    Rng rng(4);
    MultiSeries series(testing::gaussian_matrix(20, 2, rng), testing::gaussian_matrix(20, 1, rng), {"y", "z", "x"});
    std::stringstream buf;
    write_csv(buf, series);
    const auto table = read_csv(buf);
    const auto back = to_multiseries(table, {"y", "z"}, {"x"});
    CHECK((back.endogenous().array() == series.endogenous().array()).all());
    CHECK((back.exogenous().array() == series.exogenous().array()).all());
}
