#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sqforms/congruence.hpp"
#include "sqforms/oracle.hpp"
#include "test_util.hpp"

using namespace sqforms;

TEST_CASE("square_classes stated values") {
    SquareClasses c = square_classes(7);
    CHECK(c.residues == std::vector<Int>{1, 2, 4});
    CHECK(c.nonresidues == std::vector<Int>{3, 5, 6});
    c = square_classes(3);
    CHECK(c.residues == std::vector<Int>{1});
    CHECK(c.nonresidues == std::vector<Int>{2});
    c = square_classes(5);
    CHECK(c.residues == std::vector<Int>{1, 4});
    CHECK(c.nonresidues == std::vector<Int>{2, 3});
    CHECK_THROWS_AS(square_classes(2), domain_error);
    CHECK_THROWS_AS(square_classes(9), domain_error);
    CHECK_THROWS_AS(square_classes(15), domain_error);
}

TEST_CASE("class closure under products for all odd primes below 500") {
    for (std::uint64_t p : testutil::primes_below(500)) {
        if (p == 2) continue;
        SquareClasses c = square_classes(p);
        REQUIRE(c.residues.size() == (p - 1) / 2);
        REQUIRE(c.nonresidues.size() == (p - 1) / 2);
        std::set<Int> res(c.residues.begin(), c.residues.end());
        bool ok = true;
        // residue * residue and nonresidue * nonresidue land among residues,
        // residue * nonresidue among nonresidues
        for (const Int& a : c.residues) {
            for (const Int& b : c.residues) ok &= res.count((a * b) % p) == 1;
            for (const Int& b : c.nonresidues) ok &= res.count((a * b) % p) == 0;
        }
        for (const Int& a : c.nonresidues)
            for (const Int& b : c.nonresidues) ok &= res.count((a * b) % p) == 1;
        if (!ok) {
            CAPTURE(p);
            REQUIRE(ok);
        }
    }
    SUCCEED("closure holds for every odd prime below 500");
}

TEST_CASE("find_three_squares stated values") {
    TernarySolution s = find_three_squares(7);
    CHECK(s.x == 1);
    CHECK(s.y == 2);
    CHECK(s.z == 3);
    CHECK(s.coprime);
    CHECK(s.verifies());

    s = find_three_squares(3);
    CHECK(s.x == 1);
    CHECK(s.y == 1);
    CHECK(s.z == 1);
    CHECK(s.coprime);

    s = find_three_squares(5);
    CHECK(s.x == 1);
    CHECK(s.y == 2);
    CHECK(s.z == 0);
    CHECK_FALSE(s.coprime);  // nonzero-square sums mod 5 stay in {1,2,3,4}
    CHECK(s.verifies());

    CHECK_THROWS_AS(find_three_squares(2), domain_error);
    CHECK_THROWS_AS(find_three_squares(15), domain_error);
}

TEST_CASE("find_three_squares verifies across odd primes below 500") {
    for (std::uint64_t p : testutil::primes_below(500)) {
        if (p == 2) continue;
        TernarySolution s = find_three_squares(p);
        REQUIRE(s.verifies());
        bool claims_coprime = s.x % p != 0 && s.y % p != 0 && s.z % p != 0;
        REQUIRE(s.coprime == claims_coprime);
        if (!s.coprime) REQUIRE(p == 5);
    }
}

TEST_CASE("solve_lagrange stated values") {
    auto [p1, q1] = solve_lagrange(2, 3, 7);
    CHECK(p1 == 2);
    CHECK(q1 == 2);  // 4 - 8 - 3 = -7

    auto [p2, q2] = solve_lagrange(-1, -1, 11);
    CHECK(p2 == 3);
    CHECK(q2 == 1);  // 9 + 1 + 1 = 11

    auto [p3, q3] = solve_lagrange(1, 0, 5);  // (0,0) excluded
    CHECK(p3 == 1);
    CHECK(q3 == 1);

    CHECK_THROWS_AS(solve_lagrange(1, 1, 8), domain_error);
    CHECK_THROWS_AS(solve_lagrange(1, 1, 9), domain_error);
}

TEST_CASE("solve_lagrange succeeds whenever B and C are prime to A") {
    // full (B, C) grid for small A, sampled for larger A
    for (std::uint64_t a : testutil::primes_below(200)) {
        if (a == 2) continue;
        for (Int b = 1; b < a; ++b) {
            for (Int c = 1; c < a; ++c) {
                auto [p, q] = solve_lagrange(b, c, a);
                Int v = (p * p - b * q * q - c) % a;
                if (v != 0 || (p == 0 && q == 0)) {
                    CAPTURE(a, b, c, p, q);
                    REQUIRE((v == 0 && !(p == 0 && q == 0)));
                }
            }
        }
    }
    std::mt19937_64 rng(31337);
    for (std::uint64_t a : testutil::primes_below(2000)) {
        if (a <= 200) continue;
        for (int i = 0; i < 50; ++i) {
            Int b = 1 + Int(rng() % (a - 1)), c = 1 + Int(rng() % (a - 1));
            auto [p, q] = solve_lagrange(b, c, a);
            REQUIRE((p * p - b * q * q - c) % a == 0);
        }
    }
    SUCCEED("pigeonhole construction verified");
}

TEST_CASE("solve_lagrange degenerate coefficients") {
    // C = 0 is accepted when a nontrivial solution exists (B a residue)
    auto [p0, q0] = solve_lagrange(1, 0, 5);
    CHECK((p0 * p0 - q0 * q0) % 5 == 0);
    // but B a non-residue with C = 0 only has the excluded trivial pair
    CHECK_THROWS_AS(solve_lagrange(2, 0, 3), no_solution_error);
    // and B = 0 with non-residue C has no solution at all:
    // squares mod 7 are {0,1,2,4}; 3 is not among them
    CHECK_THROWS_AS(solve_lagrange(0, 3, 7), no_solution_error);
    auto [p, q] = solve_lagrange(0, 2, 7);  // B = 0 with residue C is fine
    CHECK((p * p - 2) % 7 == 0);
}

TEST_CASE("solve_ternary stated values") {
    TernarySolution s = solve_ternary(1, 2, 3, 7);
    CHECK(s.x == 3);
    CHECK(s.y == 1);
    CHECK(s.z == 1);  // 9 + 2 + 3 = 14
    CHECK(s.coprime);
    CHECK(s.verifies());

    s = solve_ternary(1, 1, 1, 3);
    CHECK(s.x == 1);
    CHECK(s.y == 1);
    CHECK(s.z == 1);
    CHECK(s.coprime);

    CHECK_THROWS_AS(solve_ternary(1, 1, 1, 5, true), no_solution_error);

    CHECK_THROWS_AS(solve_ternary(0, 1, 1, 7), domain_error);
    CHECK_THROWS_AS(solve_ternary(1, 7, 1, 7), domain_error);
    CHECK_THROWS_AS(solve_ternary(1, 1, 1, 9), domain_error);
}

TEST_CASE("solve_ternary relaxed falls back to a zero coordinate") {
    TernarySolution s = solve_ternary(1, 1, 1, 5);
    CHECK(s.verifies());
    CHECK_FALSE(s.coprime);
    CHECK(s.z == 1);

    // x^2 + 2y^2 + 2 (mod 3) has no solution with y >= 1; y = 0 works
    s = solve_ternary(1, 2, 2, 3);
    CHECK(s.verifies());
    CHECK_FALSE(s.coprime);
    CHECK(s.y == 0);
}

TEST_CASE("solve_ternary agrees with the exhaustive oracle on coprime existence") {
    for (std::uint64_t n : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        for (Int lambda = 1; lambda < n; ++lambda) {
            for (Int mu = 1; mu < n; ++mu) {
                for (Int nu = 1; nu < n; ++nu) {
                    bool oracle_has =
                        !oracle::exhaustive_ternary(lambda, mu, nu, n).empty();
                    bool solver_has = true;
                    try {
                        TernarySolution s = solve_ternary(lambda, mu, nu, n, true);
                        REQUIRE(s.verifies());
                        REQUIRE(s.coprime);
                    } catch (const no_solution_error&) {
                        solver_has = false;
                    }
                    if (oracle_has != solver_has) {
                        CAPTURE(n, lambda, mu, nu);
                        REQUIRE(oracle_has == solver_has);
                    }
                    TernarySolution relaxed = solve_ternary(lambda, mu, nu, n);
                    REQUIRE(relaxed.verifies());
                }
            }
        }
    }
}

TEST_CASE("rescale_solution stated values") {
    TernarySolution s = solve_ternary(1, 2, 3, 7);  // (3, 1, 1)
    TernarySolution r = rescale_solution(s, 2);
    CHECK(r.x == 6);
    CHECK(r.y == 2);
    CHECK(r.z == 2);  // 36 + 8 + 12 = 56 = 8 * 7
    CHECK(r.verifies());

    TernarySolution same = rescale_solution(s, s.z);
    CHECK(same.x == s.x);
    CHECK(same.y == s.y);
    CHECK(same.z == s.z);

    TernarySolution t;
    t.x = 1; t.y = 2; t.z = 3;
    t.lambda = 1; t.mu = 1; t.nu = 1;
    t.N = 7;  // 1 + 4 + 9 = 14
    TernarySolution u = rescale_solution(t, 1);  // v = 3^{-1} = 5
    CHECK(u.x == 5);
    CHECK(u.y == 3);
    CHECK(u.z == 1);  // 25 + 9 + 1 = 35
    CHECK(u.verifies());

    TernarySolution z0 = find_three_squares(5);  // z = 0
    CHECK_THROWS_AS(rescale_solution(z0, 2), domain_error);
    CHECK_THROWS_AS(rescale_solution(t, 7), domain_error);
    TernarySolution bogus = t;
    bogus.x = 2;
    CHECK_THROWS_AS(rescale_solution(bogus, 1), domain_error);
}

TEST_CASE("normalize_coefficients stated values") {
    auto n1 = normalize_coefficients(2, 3, 4, 7);  // theta = 4
    CHECK(n1 == std::array<Int, 3>{1, 5, 2});
    auto n2 = normalize_coefficients(1, 4, 6, 11);
    CHECK(n2 == std::array<Int, 3>{1, 4, 6});
    auto n3 = normalize_coefficients(3, 1, 1, 5);  // theta = 2
    CHECK(n3 == std::array<Int, 3>{1, 2, 2});
    CHECK_THROWS_AS(normalize_coefficients(7, 1, 1, 7), domain_error);
    CHECK_THROWS_AS(normalize_coefficients(1, 1, 1, 4), domain_error);
}

TEST_CASE("normalization preserves the full solution set") {
    for (std::uint64_t n : {5ULL, 7ULL, 11ULL}) {
        for (Int lambda = 1; lambda < n; ++lambda) {
            auto [one, mu2, nu2] = normalize_coefficients(lambda, 3, 4, n);
            REQUIRE(one == 1);
            for (Int x = 0; x < n; ++x)
                for (Int y = 0; y < n; ++y)
                    for (Int z = 0; z < n; ++z) {
                        bool orig = (lambda * x * x + 3 * y * y + 4 * z * z) % n == 0;
                        bool norm = (x * x + mu2 * y * y + nu2 * z * z) % n == 0;
                        if (orig != norm) {
                            CAPTURE(n, lambda, x, y, z);
                            REQUIRE(orig == norm);
                        }
                    }
        }
    }
    SUCCEED("solution sets identical");
}

TEST_CASE("rescale and normalize keep verifying solutions") {
    for (std::uint64_t p : testutil::primes_below(100)) {
        if (p == 2) continue;
        TernarySolution s = solve_ternary(2, 1, p - 1, p);
        REQUIRE(s.verifies());
        if (s.z % p != 0) {
            for (Int f = 1; f < std::min<std::uint64_t>(p, 6); ++f)
                REQUIRE(rescale_solution(s, f).verifies());
        }
    }
}
