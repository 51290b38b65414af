#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.h"
#include "semicrf/rng.h"
#include "semicrf/semicrf.h"

using namespace semicrf;
using autodiff::node;
using autodiff::tape;

namespace {

// Lattice whose scores are plain input nodes copied from the oracle table.
segment_lattice input_lattice(tape& t, const oracle::score_table& s) {
    segment_lattice lat(s.n, s.max_len, s.num_labels, &t);
    for (int b = 0; b < s.n; ++b) {
        for (int e = b + 1; e <= std::min(s.n, b + s.max_len); ++e) {
            for (int y = 0; y < s.num_labels; ++y) {
                lat.set(b, e, y, t.scalar_input(s.at(b, e, y)));
            }
        }
    }
    return lat;
}

}  // namespace

TEST_CASE("viterbi on a single unit picks the best label") {
    tape t;
    oracle::score_table s(1, 1, 3);
    s.at(0, 1, 0) = 0.5;
    s.at(0, 1, 1) = 2.0;
    s.at(0, 1, 2) = -1.0;
    segment_lattice lat = input_lattice(t, s);
    viterbi_result r = viterbi(lat);
    REQUIRE(r.best.size() == 1);
    CHECK(r.best[0] == segment{0, 1, 1});
    CHECK(r.score == 2.0);
}

TEST_CASE("viterbi matches exhaustive max on a hand-set 3-unit lattice") {
    tape t;
    oracle::score_table s(3, 3, 1);
    s.at(0, 1, 0) = 1.0;
    s.at(0, 2, 0) = 2.5;
    s.at(0, 3, 0) = 2.0;
    s.at(1, 2, 0) = -0.5;
    s.at(1, 3, 0) = 1.0;
    s.at(2, 3, 0) = 0.75;
    segment_lattice lat = input_lattice(t, s);
    viterbi_result r = viterbi(lat);

    auto all = oracle::all_segmentations(3, 3, 1);
    CHECK(all.size() == 4);
    auto best = oracle::best_segmentation(s, all);
    CHECK(r.score == doctest::Approx(best.score).epsilon(1e-12));
    CHECK(r.best == best.best);
    // (0,2) then (2,3): 2.5 + 0.75 = 3.25 beats 2.0 and 1.0 - 0.5 + 0.75
    CHECK(r.score == doctest::Approx(3.25));
}

TEST_CASE("viterbi equals brute force on 100 random 6-unit lattices") {
    rng r(101);
    auto all = oracle::all_segmentations(6, 3, 2);
    for (int trial = 0; trial < 100; ++trial) {
        oracle::score_table s(6, 3, 2);
        s.randomize(r);
        tape t;
        segment_lattice lat = input_lattice(t, s);
        viterbi_result got = viterbi(lat);
        auto want = oracle::best_segmentation(s, all);
        CHECK(std::fabs(got.score - want.score) < 1e-10);
        if (want.score - want.second > 1e-9) {
            CHECK(got.best == want.best);
        }
    }
}

TEST_CASE("viterbi ties prefer the shorter segment, then the lower label") {
    tape t;
    oracle::score_table s(2, 2, 2);  // all zeros: every segmentation ties
    segment_lattice lat = input_lattice(t, s);
    viterbi_result r = viterbi(lat);
    CHECK(r.best == segmentation{{0, 1, 0}, {1, 2, 0}});
    CHECK(r.score == 0.0);
}

TEST_CASE("log_partition on one unit with two labels") {
    tape t;
    oracle::score_table s(1, 1, 2);
    s.at(0, 1, 0) = 0.3;
    s.at(0, 1, 1) = -1.2;
    segment_lattice lat = input_lattice(t, s);
    double lz = log_partition(lat)->scalar();
    CHECK(lz == doctest::Approx(std::log(std::exp(0.3) + std::exp(-1.2))).epsilon(1e-14));
}

TEST_CASE("zero scores count segmentations: log 4 and log 18") {
    tape t;
    oracle::score_table s1(3, 3, 1);
    CHECK(log_partition(input_lattice(t, s1))->scalar() ==
          doctest::Approx(std::log(4.0)).epsilon(1e-13));

    oracle::score_table s2(3, 3, 2);
    CHECK(log_partition(input_lattice(t, s2))->scalar() ==
          doctest::Approx(std::log(18.0)).epsilon(1e-13));
}

TEST_CASE("log_partition matches enumeration over a parameter sweep") {
    rng r(103);
    for (int n = 1; n <= 6; ++n) {
        for (int max_len = 1; max_len <= 3; ++max_len) {
            for (int labels = 1; labels <= 2; ++labels) {
                auto all = oracle::all_segmentations(n, max_len, labels);
                for (int trial = 0; trial < 5; ++trial) {
                    oracle::score_table s(n, max_len, labels);
                    s.randomize(r);
                    tape t;
                    double got = log_partition(input_lattice(t, s))->scalar();
                    double want = oracle::log_z(s, all);
                    CHECK(std::fabs(got - want) <= 1e-9 * std::max(1.0, std::fabs(want)));
                }
            }
        }
    }
}

TEST_CASE("nll is zero when only one segmentation exists") {
    tape t;
    oracle::score_table s(1, 1, 1);
    s.at(0, 1, 0) = 1.7;
    segment_lattice lat = input_lattice(t, s);
    node* loss = nll(lat, {{0, 1, 0}});
    CHECK(std::fabs(loss->scalar()) < 1e-12);
}

TEST_CASE("zero scores make every segmentation cost log(count)") {
    tape t;
    oracle::score_table z(3, 3, 1);
    segment_lattice zl = input_lattice(t, z);
    for (const auto& gold : oracle::all_segmentations(3, 3, 1)) {
        CHECK(nll(zl, gold)->scalar() == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    }
}

TEST_CASE("probabilities over all segmentations sum to one") {
    rng r(107);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + static_cast<int>(r.below(5));
        int max_len = 1 + static_cast<int>(r.below(3));
        int labels = 1 + static_cast<int>(r.below(2));
        oracle::score_table s(n, max_len, labels);
        s.randomize(r);
        tape t;
        segment_lattice lat = input_lattice(t, s);
        double total = 0.0;
        for (const auto& gold : oracle::all_segmentations(n, max_len, labels)) {
            total += std::exp(-nll(lat, gold)->scalar());
        }
        CHECK(std::fabs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("nll never goes measurably negative") {
    rng r(109);
    for (int trial = 0; trial < 50; ++trial) {
        oracle::score_table s(5, 3, 2);
        s.randomize(r, -4, 4);
        tape t;
        segment_lattice lat = input_lattice(t, s);
        auto all = oracle::all_segmentations(5, 3, 2);
        const auto& gold = all[r.below(all.size())];
        CHECK(nll(lat, gold)->scalar() >= -1e-10);
    }
}

TEST_CASE("nll gradient w.r.t. a score is marginal minus gold indicator") {
    rng r(113);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + static_cast<int>(r.below(5));
        int max_len = 1 + static_cast<int>(r.below(3));
        int labels = 1 + static_cast<int>(r.below(2));
        oracle::score_table s(n, max_len, labels);
        s.randomize(r);
        auto all = oracle::all_segmentations(n, max_len, labels);
        std::vector<double> marg = oracle::marginals(s, all);
        const auto& gold = all[r.below(all.size())];

        tape t;
        segment_lattice lat = input_lattice(t, s);
        t.backward(nll(lat, gold));

        for (int b = 0; b < n; ++b) {
            for (int e = b + 1; e <= std::min(n, b + max_len); ++e) {
                for (int y = 0; y < labels; ++y) {
                    double indicator = 0.0;
                    for (const auto& g : gold) {
                        if (g == segment{b, e, y}) indicator = 1.0;
                    }
                    double want =
                        marg[static_cast<std::size_t>((b * max_len + (e - b - 1)) * labels + y)] -
                        indicator;
                    double got = lat.at(b, e, y)->grad[0];
                    CHECK(std::fabs(got - want) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("adding a constant shifts totals by count and keeps L=1 argmax") {
    rng r(127);
    oracle::score_table s(5, 3, 2);
    s.randomize(r);
    double c = 0.37;
    oracle::score_table shifted = s;
    for (int b = 0; b < s.n; ++b) {
        for (int e = b + 1; e <= std::min(s.n, b + s.max_len); ++e) {
            for (int y = 0; y < s.num_labels; ++y) {
                shifted.at(b, e, y) += c;
            }
        }
    }
    for (const auto& segs : oracle::all_segmentations(5, 3, 2)) {
        double before = oracle::total_score(s, segs);
        double after = oracle::total_score(shifted, segs);
        CHECK(after == doctest::Approx(before + c * static_cast<double>(segs.size())).epsilon(1e-12));
    }

    // unit-length lattice: every segmentation has n segments, argmax invariant
    oracle::score_table u(6, 1, 3);
    u.randomize(r);
    oracle::score_table u_shift = u;
    for (auto& v : u_shift.s) v += 5.0;
    tape t;
    CHECK(viterbi(input_lattice(t, u)).best == viterbi(input_lattice(t, u_shift)).best);
}

TEST_CASE("enumerate_segmentations matches closed-form counts") {
    CHECK(enumerate_segmentations(3, 3, 1).size() == 4);
    CHECK(enumerate_segmentations(3, 1, 1).size() == 1);
    CHECK(enumerate_segmentations(5, 2, 1).size() == 8);  // Fibonacci F(6)
    CHECK(enumerate_segmentations(3, 3, 2).size() == 18);

    for (int n = 1; n <= 7; ++n) {
        for (int max_len = 1; max_len <= 4; ++max_len) {
            for (int labels = 1; labels <= 3; ++labels) {
                auto all = enumerate_segmentations(n, max_len, labels);
                CHECK(all.size() == count_segmentations(n, max_len, labels));
                for (const auto& segs : all) {
                    CHECK_NOTHROW(validate_segmentation(segs, n, max_len, labels));
                }
            }
        }
    }
}

TEST_CASE("enumeration refuses above the cap") {
    CHECK_THROWS_AS(enumerate_segmentations(30, 4, 3, 1000), capacity_error);
}

TEST_CASE("lattice preconditions") {
    CHECK_THROWS_AS(segment_lattice(0, 3, 1, nullptr), autodiff::precondition_error);

    tape t;
    oracle::score_table s(3, 2, 1);
    segment_lattice lat = input_lattice(t, s);
    CHECK_THROWS_AS(lat.at(0, 3, 0), autodiff::precondition_error);  // length > L
    CHECK_THROWS_AS(nll(lat, {{0, 3, 0}}), data_error);              // invalid gold
    CHECK_THROWS_WITH_AS(nll(lat, {{0, 2, 0}, {2, 3, 5}}), doctest::Contains("label"), data_error);
}
