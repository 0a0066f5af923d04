#include <doctest.h>

#include <sstream>

#include "rps/cycle_counter.hpp"
#include "rps/dataset.hpp"
#include "test_support.hpp"

using rps::Point2;

namespace {

rps::DataSet parse(const std::string& text) {
    std::istringstream in(text);
    return rps::parse_csv(in, "test.csv");
}

}  // namespace

TEST_CASE("load share columns") {
    const auto d = parse("treatment,block,period,x,y\nS,B1,0,0.2,0.3\nS,B1,1,0.25,0.3\n");
    REQUIRE(d.treatments.size() == 1);
    REQUIRE(d.treatments[0].blocks.size() == 1);
    const auto& t = d.treatments[0].blocks[0];
    CHECK(t.size() == 2);
    CHECK(t.points.col(1) == Point2<double>(0.25, 0.3));
    CHECK(t.block_id == "B1");
    CHECK(t.treatment_id == "S");
    CHECK(d.rows == 2);
    CHECK(d.source == "test.csv");
}

TEST_CASE("load count columns") {
    const auto d = parse("treatment,block,period,n1,n2,n3\nS,B1,0,2,3,3\nS,B1,1,4,4,0\n");
    const auto& t = d.treatments[0].blocks[0];
    CHECK(t.points.col(0) == Point2<double>(0.25, 0.375));
    CHECK(t.points.col(1) == Point2<double>(0.5, 0.5));
}

TEST_CASE("columns are found by name and rows may interleave blocks") {
    const auto d = parse(
        "period,x,y,block,treatment\n"
        "0,0.1,0.1,B10,U\n"
        "0,0.2,0.2,B2,U\n"
        "1,0.3,0.3,B10,U\n"
        "1,0.4,0.4,B2,U\n"
        "0,0.1,0.2,B1,S\n");
    REQUIRE(d.treatments.size() == 2);
    CHECK(d.treatments[0].label == "U");
    CHECK(d.treatments[1].label == "S");
    REQUIRE(d.treatments[0].blocks.size() == 2);
    CHECK(d.treatments[0].blocks[0].block_id == "B2");
    CHECK(d.treatments[0].blocks[1].block_id == "B10");
    CHECK(d.treatments[0].blocks[1].points.col(1) == Point2<double>(0.3, 0.3));
    CHECK(d.find("S") == &d.treatments[1]);
    CHECK(d.find("missing") == nullptr);
}

TEST_CASE("natural label order") {
    CHECK(rps::natural_less("B2", "B10"));
    CHECK_FALSE(rps::natural_less("B10", "B2"));
    CHECK(rps::natural_less("B1", "C1"));
    CHECK(rps::natural_less("B", "B1"));
    CHECK(rps::natural_less("B02", "B3"));
}

TEST_CASE("validation errors name the row") {
    try {
        parse("treatment,block,period,x,y\nS,B1,0,0.2,0.3\nS,B1,1,0.7,0.5\n");
        FAIL("expected RowValidation");
    } catch (const rps::RowValidation& e) {
        CHECK(e.row() == 3);
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("treatment,block,period,x,y\nS,B1,0,0.2\n"), rps::RowValidation);
    CHECK_THROWS_AS(parse("treatment,block,period,x,y\nS,B1,zero,0.2,0.1\n"), rps::RowValidation);
    CHECK_THROWS_AS(parse("treatment,block,period,x,y\nS,B1,0,abc,0.1\n"), rps::RowValidation);
    CHECK_THROWS_AS(parse("treatment,block,period,x,y\nS,B1,1,0.2,0.1\nS,B1,1,0.2,0.1\n"), rps::RowValidation);
    CHECK_THROWS_AS(parse("treatment,block,period,n1,n2,n3\nS,B1,0,0,0,0\n"), rps::RowValidation);
    CHECK_THROWS_AS(parse("treatment,block,period,n1,n2,n3\nS,B1,0,-1,3,3\n"), rps::RowValidation);
    CHECK_THROWS_AS(parse("treatment,block,period,x,y\n,B1,0,0.2,0.1\n"), rps::RowValidation);
}

TEST_CASE("structural errors") {
    CHECK_THROWS_AS(parse(""), rps::EmptyFile);
    CHECK_THROWS_AS(parse("\n\n"), rps::EmptyFile);
    CHECK_THROWS_AS(parse("treatment,block,period,x,y\n"), rps::EmptyFile);
    CHECK_THROWS_AS(parse("treatment,period,x,y\nS,0,0.1,0.1\n"), rps::MissingColumn);
    CHECK_THROWS_AS(parse("treatment,block,period,x\nS,B1,0,0.1\n"), rps::MissingColumn);
    CHECK_THROWS_AS(parse("treatment,block,period,n1,n2\nS,B1,0,1,1\n"), rps::MissingColumn);
    CHECK_THROWS_AS(rps::load_csv("/nonexistent/file.csv"), rps::DataError);
}

TEST_CASE("tolerance snapping and CRLF input") {
    const auto d = parse("treatment,block,period,x,y\r\nS,B1,0,-0.0000000001,0.5\r\nS,B1,1,0.5,0.5000000001\r\n");
    const auto& t = d.treatments[0].blocks[0];
    CHECK(t.points(0, 0) == 0.0);
    CHECK(t.points(0, 1) + t.points(1, 1) <= 1.0);
}

TEST_CASE("write then load reproduces trajectories bit for bit") {
    auto blocks = rps::testing::loop_blocks({0.3, 0.35}, 0.1, 2, 0.01, 3, 17);
    std::ostringstream out;
    rps::write_csv(out, blocks);
    const auto d = parse(out.str());
    REQUIRE(d.treatments.size() == 1);
    REQUIRE(d.treatments[0].blocks.size() == 3);
    const rps::Tripwire<double> wire(0.3, 0.33);
    for (std::size_t b = 0; b < 3; ++b) {
        CHECK(d.treatments[0].blocks[b].points == blocks[b].points);
        CHECK(rps::count_block(d.treatments[0].blocks[b], wire) == rps::count_block(blocks[b], wire));
    }
    std::ostringstream again;
    rps::write_csv(again, d);
    CHECK(again.str() == out.str());
}
