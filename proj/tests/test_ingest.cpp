#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stylized/errors.hpp"
#include "stylized/ingest.hpp"

using namespace stylized;

namespace {

PriceSeries read(const std::string& text, IngestSpec spec = {}) {
    std::istringstream in(text);
    return ingest_stream(in, spec, "mem");
}

std::size_t failing_row(const std::string& text, IngestSpec spec = {}) {
    try {
        (void)read(text, spec);
    } catch (const IngestError& e) {
        return e.row();
    }
    return 0;
}

}  // namespace

TEST_CASE("well-formed two-row file") {
    const auto p = read("date,adj_close\n2020-01-02,100.5\n2020-01-03,101\n");
    REQUIRE(p.size() == 2);
    CHECK(p.observations()[0].price == 100.5);
    CHECK(format_iso_date(p.observations()[1].date) == "2020-01-03");
    CHECK(p.instrument_id() == "mem");
}

TEST_CASE("non-positive and malformed values name their row") {
    CHECK(failing_row("date,adj_close\n2020-01-02,100\n2020-01-03,0\n") == 3);
    CHECK(failing_row("date,adj_close\n2020-01-02,-4\n") == 2);
    CHECK(failing_row("date,adj_close\n2020-01-02,abc\n") == 2);
    CHECK(failing_row("date,adj_close\n2020-01-02,1\n2020-13-40,2\n") == 3);
    CHECK(failing_row("date,adj_close\n2020-01-02,1\n2020-01-03\n") == 3);
    CHECK_THROWS_AS(read("when,price\n2020-01-02,1\n"), IngestError);
    CHECK_THROWS_AS(read(""), IngestError);
}

TEST_CASE("unsorted rows are sorted on ingest") {
    const auto sorted = read("date,adj_close\n2020-01-02,1\n2020-01-03,2\n2020-01-06,3\n");
    const auto shuffled = read("date,adj_close\n2020-01-06,3\n2020-01-02,1\n2020-01-03,2\n");
    REQUIRE(sorted.size() == shuffled.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        CHECK(sorted.observations()[i].date == shuffled.observations()[i].date);
        CHECK(sorted.observations()[i].price == shuffled.observations()[i].price);
    }
}

TEST_CASE("duplicate dates follow the policy") {
    const std::string text = "date,adj_close\n2020-01-02,1\n2020-01-03,2\n2020-01-03,5\n";
    CHECK(failing_row(text) == 4);
    IngestSpec spec;
    spec.on_duplicate = DuplicatePolicy::keep_last;
    const auto p = read(text, spec);
    REQUIRE(p.size() == 2);
    CHECK(p.observations()[1].price == 5.0);
}

TEST_CASE("custom columns, formats and CSV details") {
    IngestSpec spec;
    spec.date_column = "Day";
    spec.price_column = "Close";
    spec.date_format = "%d/%m/%Y";
    const auto p = read("\xEF\xBB\xBF" "Day,Open,Close\r\n\"30/12/2011\",1,\"37077.52\"\r\n\r\n02/01/2012,2,37100\r\n", spec);
    REQUIRE(p.size() == 2);
    CHECK(format_iso_date(p.observations()[0].date) == "2011-12-30");

    IngestSpec by_index;
    by_index.date_column = "0";
    by_index.price_column = "2";
    const auto q = read("a,b,c\n2020-01-02,9,7.5\n2020-01-03,9,8\n", by_index);
    CHECK(q.observations()[0].price == 7.5);

    IngestSpec semi;
    semi.delimiter = ';';
    CHECK(read("date;adj_close\n2020-01-02;3\n", semi).size() == 1);
}

TEST_CASE("date parsing") {
    CHECK(format_iso_date(parse_date("2011-12-30", "%Y-%m-%d")) == "2011-12-30");
    CHECK(format_iso_date(parse_date("12/30/2011", "%m/%d/%Y")) == "2011-12-30");
    CHECK_THROWS_AS((void)parse_date("2011-02-30", "%Y-%m-%d"), DomainError);
    CHECK_THROWS_AS((void)parse_date("garbage", "%m/%d/%Y"), DomainError);
}

TEST_CASE("file ingestion uses the file stem as instrument id") {
    const auto dir = std::filesystem::path(STYLIZED_TEST_TMP) / "ingest";
    std::filesystem::create_directories(dir);
    const auto path = dir / "IPC.csv";
    {
        std::ofstream out(path);
        out << "date,adj_close\n2020-01-02,1\n2020-01-03,2\n";
    }
    IngestSpec spec;
    spec.path = path;
    const auto p = ingest(spec);
    CHECK(p.instrument_id() == "IPC");
    spec.path = dir / "missing.csv";
    CHECK_THROWS_AS((void)ingest(spec), IngestError);
}
