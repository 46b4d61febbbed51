#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/congruence.hpp"

#include <set>

#include "qlab/config.hpp"
#include "qlab/partitions.hpp"
#include "qlab/qproducts.hpp"

#include "prop_helpers.hpp"

using namespace qlab;

TEST_CASE("claim parsing") {
    const Claim z = parse_claim("DSOME[25n+6] == 0 mod 4");
    const auto& zc = std::get<ZeroClaim>(z);
    CHECK(zc.target == "DSOME");
    CHECK(zc.prog.step == 25);
    CHECK(zc.prog.residue == 6);
    CHECK(zc.modulus == 4);
    CHECK(claim_to_string(z) == "DSOME[25n+6] == 0 mod 4");

    const Claim r = parse_claim(
        "DSOME[15625n+651] == 5*DSOME[25n+1] + DSOME[625n+26] - 5*DSOME[n] mod 8");
    const auto& rc = std::get<RelationClaim>(r);
    CHECK(rc.lhs.step == 15625);
    CHECK(rc.lhs.residue == 651);
    REQUIRE(rc.rhs.size() == 3);
    CHECK(rc.rhs[0].coeff == 5);
    CHECK(rc.rhs[1].coeff == 1);
    CHECK(rc.rhs[2].coeff == -5);
    CHECK(rc.rhs[2].prog.step == 1);
    CHECK(rc.rhs[2].prog.residue == 0);
    CHECK(claim_to_string(r) ==
          "DSOME[15625n+651] == 5*DSOME[25n+1] + DSOME[625n+26] - 5*DSOME[n] mod 8");

    CHECK_THROWS_AS(parse_claim("DSOME[4n] == 0"), ParseError);        // missing mod
    CHECK_THROWS_AS(parse_claim("DSOME[4n+5] == 0 mod 4"), ParseError);  // residue >= step
    CHECK_THROWS_AS(parse_claim("DSOME[4n] == SOME[4n] mod 4"), ParseError);  // mixed targets
    CHECK_THROWS_AS(parse_claim("[4n] == 0 mod 4"), ParseError);
}

TEST_CASE("target series values and cross-checks") {
    CongruenceLab lab;
    const Series d4 = lab.series_for_target("DSOME", 7, 4);
    CHECK(d4.mod() == std::vector<std::uint64_t>{0, 1, 2, 2, 0, 3, 0, 3});

    const Series s5 = lab.series_for_target("SOME", 4, 5);
    CHECK(s5.mod_at(4) == 0);

    const Series tiny = lab.series_for_target("DSOME", 0, 2);
    CHECK(tiny.precision() == 1);
    CHECK(tiny.mod_at(0) == 0);

    CHECK_THROWS_AS(lab.series_for_target("NOPE", 10, 2), Error);

    // brute-force ground truth mod 8
    const Series d8 = lab.series_for_target("DSOME", 30, 8);
    const Series s8 = lab.series_for_target("SOME", 30, 8);
    for (unsigned n = 0; n <= 30; ++n) {
        const long long dv = dsome_bruteforce(n), sv = some_bruteforce(n);
        CHECK(d8.mod_at(n) == static_cast<std::uint64_t>(((dv % 8) + 8) % 8));
        CHECK(s8.mod_at(n) == static_cast<std::uint64_t>(((sv % 8) + 8) % 8));
    }
}

TEST_CASE("mod pipeline agrees with the exact pipeline") {
    CHECK_NOTHROW(testing::check_mod_vs_exact(400));
}

TEST_CASE("zero congruence checks") {
    CongruenceLab lab;

    const auto t12 = lab.check_zero(std::get<ZeroClaim>(parse_claim("DSOME[25n+6] == 0 mod 4")),
                                    200);
    CHECK(t12.holds());

    for (int r = 1; r <= 4; ++r) {
        const std::string claim = "DSOME[625n+" + std::to_string(125 * r + 26) + "] == 0 mod 8";
        const auto rep = lab.check_zero(std::get<ZeroClaim>(parse_claim(claim)), 20);
        CAPTURE(claim);
        CHECK(rep.holds());
    }

    const auto bad = lab.check_zero(std::get<ZeroClaim>(parse_claim("DSOME[4n+1] == 0 mod 4")),
                                    10);
    CHECK(bad.status == VerifyStatus::FailsAt);
    CHECK(bad.fail_index == 0);
    CHECK(bad.lhs_coeff == "1");
}

TEST_CASE("printed mod-8 family fails where the proof-derived family holds") {
    CongruenceLab lab;
    // as printed: 625n + 25r + 1; every residue fails at n = 0
    const std::vector<std::uint64_t> first_residues{6, 7, 4, 2};  // DSOME(26,51,76,101) mod 8
    for (int r = 1; r <= 4; ++r) {
        const std::string claim = "DSOME[625n+" + std::to_string(25 * r + 1) + "] == 0 mod 8";
        const auto rep = lab.check_zero(std::get<ZeroClaim>(parse_claim(claim)), 20);
        CAPTURE(claim);
        CHECK(rep.status == VerifyStatus::FailsAt);
        CHECK(rep.fail_index == 0);
        CHECK(rep.lhs_coeff == std::to_string(first_residues[static_cast<std::size_t>(r - 1)]));
    }
}

TEST_CASE("relational congruences") {
    CongruenceLab lab;
    const auto r1 = lab.check_relation(
        std::get<RelationClaim>(parse_claim(
            "DSOME[15625n+651] == 5*DSOME[25n+1] + DSOME[625n+26] - 5*DSOME[n] mod 8")),
        1);
    CHECK(r1.holds());

    // a relation with a zero right-hand side against a nonzero progression
    const auto bad = lab.check_relation(
        std::get<RelationClaim>(parse_claim("DSOME[5n+1] == 2*DSOME[5n+1] mod 8")), 10);
    CHECK(bad.status == VerifyStatus::FailsAt);
    CHECK(bad.fail_index == 0);
}

TEST_CASE("scan finds the multiples-of-four congruence") {
    CongruenceLab lab;
    const auto hits = lab.scan("DSOME", 4, 4, {4}, 100);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].prog.step == 4);
    CHECK(hits[0].prog.residue == 0);
    CHECK(hits[0].modulus == 4);
    CHECK(hits[0].confirmed);
    CHECK(hits[0].verified_up_to == 200);
}

TEST_CASE("scan with subsumption across moduli") {
    CongruenceLab lab;
    // step 8 with moduli {2, 4}: DSOME(8n) vanishes mod 4, hence also mod 2;
    // the mod-2 hit at the same progression must be subsumed
    const auto hits = lab.scan("DSOME", 8, 8, {2, 4}, 60);
    bool saw_mod4_b0 = false;
    for (const auto& h : hits) {
        CHECK(!(h.modulus == 2 && h.prog.residue == 0));
        if (h.modulus == 4 && h.prog.residue == 0) saw_mod4_b0 = true;
    }
    CHECK(saw_mod4_b0);
}

TEST_CASE("scan guards") {
    CongruenceLab lab;
    CHECK_THROWS_AS(lab.scan("DSOME", 4, 4, {4}, 100, 10), Error);   // min_support too low
    CHECK_THROWS_AS(lab.scan("DSOME", 4, 2, {4}, 100), Error);       // bad range
    CHECK(lab.scan("DSOME", 4, 4, {4}, 15).empty());                 // support unreachable
}

TEST_CASE("discovered congruence families at step 250 and 500") {
    // The mod-8 data at step 250 contains twenty vanishing residues, the
    // classes 11, 21, 31, 41 mod 50; brute force confirms the smallest ones.
    CongruenceLab lab;
    const auto hits = lab.scan("DSOME", 250, 250, {8}, 24);
    std::set<std::uint64_t> residues;
    for (const auto& h : hits)
        if (h.confirmed) residues.insert(h.prog.residue);
    std::set<std::uint64_t> expect;
    for (std::uint64_t b : {11, 21, 31, 41})
        for (std::uint64_t k = 0; k < 5; ++k) expect.insert(b + 50 * k);
    CHECK(residues == expect);

    for (unsigned n : {11u, 21u, 31u, 41u}) CHECK(dsome_bruteforce(n) % 8 == 0);
}

TEST_CASE("Andrews-Ghosh Dastidar conjecture checker") {
    CongruenceLab lab;
    const auto a1 = lab.check_ag_conjecture(1, 500);
    CHECK(a1.holds());
    CHECK(a1.id.find("mod 5") != std::string::npos);

    const auto a2 = lab.check_ag_conjecture(2, 1200);
    CHECK(a2.holds());

    CHECK_THROWS_AS(lab.check_ag_conjecture(4, 100), Error);

    // the wrong residue class fails quickly: SOME(8) = 12 is 2 mod 5
    const auto wrong = lab.check_zero(std::get<ZeroClaim>(parse_claim("SOME[5n+3] == 0 mod 5")),
                                      10);
    CHECK(wrong.status == VerifyStatus::FailsAt);
    CHECK(wrong.fail_index == 1);
    CHECK(some_bruteforce(3) == 5);
    CHECK(some_bruteforce(8) == 12);
}

TEST_CASE("SOME congruences from the scanner's perspective") {
    CongruenceLab lab;
    CHECK(lab.check_zero(std::get<ZeroClaim>(parse_claim("SOME[5n+2] == 0 mod 5")), 200).holds());
    CHECK(lab.check_zero(std::get<ZeroClaim>(parse_claim("SOME[5n+4] == 0 mod 5")), 200).holds());
    CHECK(lab.check_zero(std::get<ZeroClaim>(parse_claim("SOME[4n] == 0 mod 4")), 200).holds());
    CHECK(lab.check_zero(std::get<ZeroClaim>(parse_claim("DSOME[4n] == 0 mod 4")), 500).holds());
}

TEST_CASE("scaled congruence on an exact residue series") {
    // DSOME(25n+6) extracted from the exact closed form vanishes mod 4
    const Series res = dissect(dsome_gf_closed(25 * 30 + 7), 25, 6);
    CHECK(scaled_congruence_zero(res, 4));
    CHECK_FALSE(scaled_congruence_zero(res, 16));
}

TEST_CASE("resource limits surface as reports or errors") {
    CongruenceLab lab;
    const std::size_t old_cap = config::precision_cap();
    config::set_precision_cap(1000);
    const auto rep = lab.check_zero(std::get<ZeroClaim>(parse_claim("DSOME[25n+6] == 0 mod 4")),
                                    200);
    CHECK(rep.status == VerifyStatus::Error);
    CHECK_THROWS_AS(lab.series_for_target("DSOME", 5000, 4), ResourceLimitError);
    config::set_precision_cap(old_cap);
}
