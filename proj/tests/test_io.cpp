#include "doctest.h"

#include "hpe/error.hpp"
#include "hpe/io.hpp"

#include <cstdio>
#include <filesystem>

using namespace hpe;

namespace {

std::pair<MopRecord, std::vector<SemiclassicalWeight>> solved(const std::string& fam,
                                                              const std::map<std::string, Rat>& p, int n1, int n2)
{
    auto ws = family(fam, p);
    auto rec = solve_mop(ws[0], ws[1], {n1, n2});
    rec.family = fam;
    rec.params = p;
    complete_record(rec, ws);
    return {rec, ws};
}

bool all_ok(const std::vector<IdentityCheck>& c)
{
    for (const auto& x : c)
        if (!x.ok)
            return false;
    return true;
}

}  // namespace

TEST_CASE("polynomials and tails survive JSON")
{
    ExactPoly p{Rat(-39971, 1024), 0, Rat(7, 3), 1};
    CHECK(poly_from_json(to_json(p)) == p);
    CHECK(to_json(p)[0] == "-39971/1024");
    LaurentTail t({0, Rat(1, 2), Rat(-5, 7)});
    auto back = tail_from_json(to_json(t));
    CHECK(back.order() == t.order());
    for (int k = 0; k < t.order(); ++k)
        CHECK(back.coeff(k) == t.coeff(k));
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"(["1", "x"])")), Error);
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"a": 1})")), Error);
}

TEST_CASE("records round trip exactly")
{
    for (auto [fam, p] : std::vector<std::pair<std::string, std::map<std::string, Rat>>>{
             {"multiple_hermite", {{"c1", 1}, {"c2", -1}}},
             {"mlaguerre2", {{"alpha", 1}, {"c1", 1}, {"c2", 2}}},
             {"appell", {}}}) {
        CAPTURE(fam);
        auto [rec, ws] = solved(fam, p, 4, 3);
        Json j = record_to_json(rec, ws);
        auto [r2, w2] = record_from_json(Json::parse(j.dump()));
        CHECK(r2.P == rec.P);
        CHECK(r2.partners == rec.partners);
        CHECK(r2.vanvleck == rec.vanvleck);
        CHECK(r2.r_poly == rec.r_poly);
        CHECK(r2.n == rec.n);
        CHECK(r2.family == fam);
        CHECK(w2.size() == ws.size());
        CHECK(w2[1].B == ws[1].B);
        CHECK(record_to_json(r2, w2).dump() == j.dump());
        CHECK(all_ok(verify_record(r2, w2)));
    }
}

TEST_CASE("single coefficient mutations are caught")
{
    auto [rec, ws] = solved("multiple_hermite", {{"c1", 1}, {"c2", -1}}, 3, 3);
    REQUIRE(all_ok(verify_record(rec, ws)));
    for (int k = 0; k <= rec.P.degree(); ++k) {
        auto bad = rec;
        bad.P = rec.P + ExactPoly::monomial(Rat(1, 7), k);
        CAPTURE(k);
        CHECK(!all_ok(verify_record(bad, ws)));
    }
    for (size_t i = 0; i < rec.partners.size(); ++i)
        for (int k = 0; k <= rec.partners[i].degree(); ++k) {
            auto bad = rec;
            bad.partners[i] = rec.partners[i] + ExactPoly::monomial(1, k);
            CAPTURE(i);
            CAPTURE(k);
            CHECK(!all_ok(verify_record(bad, ws)));
        }
    for (int k = 0; k <= rec.vanvleck[0].degree(); ++k) {
        auto bad = rec;
        bad.vanvleck[0] = rec.vanvleck[0] + ExactPoly::monomial(1, k);
        CHECK(!all_ok(verify_record(bad, ws)));
    }
}

TEST_CASE("report serialisation")
{
    auto z = find_zeros(ExactPoly::from_roots({Rat(1, 2), -1}), 128);
    Json j = to_json(z);
    CHECK(j["points"].size() == 2);
    CHECK(to_json(std::vector<IdentityCheck>{{"ode2", true, ""}})[0]["identity"] == "ode2");

    auto dir = std::filesystem::temp_directory_path() / "hpe_io_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "r.json").string();
    write_text_file(path, j.dump(2));
    CHECK(read_json_file(path) == j);
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), Error);
}
