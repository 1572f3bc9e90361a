#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>

#include "latdom/graph.hpp"
#include "latdom/solver.hpp"

using namespace latdom;

namespace {

DominationCertificate sample_cert() {
    const LatinSquareGraph g(LatinSquare::cyclic(4));
    return solve_exact(g, DominationMode::ktuple_total(2));
}

DominationCertificate read_back(const std::string& text) {
    std::istringstream in(text);
    return read_certificate(in);
}

std::string tampered(const std::string& text, void (*mutate)(nlohmann::ordered_json&)) {
    auto j = nlohmann::ordered_json::parse(text);
    mutate(j);
    return j.dump(2) + "\n";
}

} // namespace

TEST_CASE("certificate bytes for a one-cell square") {
    const LatinSquareGraph g(LatinSquare::cyclic(1));
    const auto cert = brute_force_oracle(g, DominationMode::dominating());
    const std::string expected = R"({
  "order": 1,
  "grid": [
    [
      1
    ]
  ],
  "mode": "dom",
  "k": 1,
  "set": [
    [
      1,
      1,
      1
    ]
  ],
  "size": 1,
  "optimal": true,
  "method": "exact"
}
)";
    CHECK(certificate_to_string(cert) == expected);
}

TEST_CASE("writing is deterministic and reading inverts it exactly") {
    const auto cert = sample_cert();
    const std::string once = certificate_to_string(cert);
    CHECK(certificate_to_string(cert) == once);
    CHECK(once.back() == '\n');

    const auto back = read_back(once);
    CHECK(back.square == cert.square);
    CHECK(back.mode == cert.mode);
    CHECK(back.set == cert.set);
    CHECK(back.size == cert.size);
    CHECK(back.optimal == cert.optimal);
    CHECK(back.method == cert.method);

    CHECK(certificate_to_string(back) == once);
}

TEST_CASE("stream writer and string writer agree") {
    const auto cert = sample_cert();
    std::ostringstream out;
    write_certificate(out, cert);
    CHECK(out.str() == certificate_to_string(cert));
}

TEST_CASE("fields come out in a fixed order") {
    const std::string text = certificate_to_string(sample_cert());
    std::size_t last = 0;
    for (const char* key : {"\"order\"", "\"grid\"", "\"mode\"", "\"k\"", "\"set\"", "\"size\"",
                            "\"optimal\"", "\"method\""}) {
        const auto pos = text.find(key);
        REQUIRE(pos != std::string::npos);
        CHECK(pos > last);
        last = pos;
    }
}

TEST_CASE("demand survives the round trip") {
    const LatinSquareGraph g(LatinSquare::cyclic(3));
    const auto cert = solve_exact(g, DominationMode::ktuple_total(3));
    const auto back = read_back(certificate_to_string(cert));
    CHECK(back.mode.total());
    CHECK(back.mode.k == 3);

    const auto dom = solve_exact(g, DominationMode::dominating());
    const auto dom_back = read_back(certificate_to_string(dom));
    CHECK_FALSE(dom_back.mode.total());
    CHECK(dom_back.mode.k == 1);
}

TEST_CASE("unreadable documents are rejected") {
    CHECK_THROWS_AS(read_back("not json at all"), ParseError);
    CHECK_THROWS_AS(read_back("[]"), ParseError);
    CHECK_THROWS_AS(read_back("{}"), ParseError);
}

TEST_CASE("every tampered certificate is caught") {
    const std::string good = certificate_to_string(sample_cert());
    CHECK_NOTHROW(read_back(good));

    CHECK_THROWS_AS(read_back(tampered(good, [](nlohmann::ordered_json& j) { j.erase("size"); })),
                    ParseError);
    CHECK_THROWS_AS(read_back(tampered(good, [](nlohmann::ordered_json& j) { j["extra"] = 1; })),
                    ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["set"][0][2] = 99; })),
        ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["set"].push_back(j["set"][0]); })),
        ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["size"] = 99; })),
        ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["mode"] = "maybe"; })),
        ParseError);
    CHECK_THROWS_AS(read_back(tampered(good,
                                       [](nlohmann::ordered_json& j) {
                                           j["mode"] = "dom";
                                           j["k"] = 2;
                                       })),
                    ParseError);
    CHECK_THROWS_AS(read_back(tampered(good, [](nlohmann::ordered_json& j) { j["k"] = 0; })),
                    ParseError);
    CHECK_THROWS_AS(read_back(tampered(good, [](nlohmann::ordered_json& j) { j["order"] = 3; })),
                    ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["set"][0] = {1, 1}; })),
        ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["set"][0][0] = 77; })),
        ParseError);
    CHECK_THROWS_AS(read_back(tampered(good, [](nlohmann::ordered_json& j) { j["set"] = 5; })),
                    ParseError);
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["optimal"] = "yes"; })),
        ParseError);
    CHECK_THROWS_AS(read_back(tampered(good, [](nlohmann::ordered_json& j) { j["k"] = "1"; })),
                    ParseError);

    // A grid that is not a latin square fails its own validation, not
    // the certificate parser's.
    CHECK_THROWS_AS(
        read_back(tampered(good, [](nlohmann::ordered_json& j) { j["grid"][0] = {1, 1, 3, 4}; })),
        NotLatinError);
}
