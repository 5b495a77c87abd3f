#include "dmaplan/novelty/novelty_table.hpp"
#include "dmaplan/util/rng.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace dmaplan;
using kernels::Bitset;

namespace {

Bitset proj_of(const std::vector<std::uint32_t> &atoms, std::size_t npub) {
    Bitset b(npub);
    for (std::uint32_t a : atoms)
        b.set(a);
    return b;
}

} // namespace

TEST_CASE("search novelty over a fresh partition") {
    novelty::SearchNoveltyTable table(2, 8);
    CHECK(table.evaluate_and_insert({0, 3}, 0) == 1);         // everything unseen
    CHECK(table.evaluate_and_insert({0, 3}, 0) == novelty::beyond(2)); // exact repeat
}

TEST_CASE("sequence {p},{q},{p,q} scores 1,1,2 at cap 2 and 1,1,beyond at cap 1") {
    // independently checked against the brute-force tuple oracle
    oracle::BruteNovelty ref2(2, novelty::beyond(2));
    novelty::SearchNoveltyTable t2(2, 4);
    for (const std::vector<std::uint32_t> &atoms :
         {std::vector<std::uint32_t>{0}, {1}, {0, 1}}) {
        int expected = ref2.probe(atoms, 7);
        ref2.commit(atoms, 7);
        CHECK(t2.evaluate_and_insert(atoms, 7) == expected);
    }

    oracle::BruteNovelty ref1(1, novelty::beyond(1));
    novelty::SearchNoveltyTable t1(1, 4);
    std::vector<int> got, want;
    for (const std::vector<std::uint32_t> &atoms :
         {std::vector<std::uint32_t>{0}, {1}, {0, 1}}) {
        want.push_back(ref1.probe(atoms, 7));
        ref1.commit(atoms, 7);
        got.push_back(t1.evaluate_and_insert(atoms, 7));
    }
    CHECK(got == want);
    CHECK(got == std::vector<int>{1, 1, novelty::beyond(1)});
}

TEST_CASE("partition isolation") {
    novelty::SearchNoveltyTable table(2, 8);
    CHECK(table.evaluate_and_insert({2, 5}, 1) == 1);
    // same atoms, different partition: still novelty 1
    CHECK(table.evaluate_and_insert({2, 5}, 2) == 1);
    // and the original partition is unchanged by the insert into (2)
    CHECK(table.evaluate_and_insert({2, 5}, 1) == novelty::beyond(2));
}

TEST_CASE("atom outside the universe violates the contract") {
    novelty::SearchNoveltyTable table(2, 4);
    CHECK_THROWS_AS(table.evaluate_and_insert({9}, 0), std::logic_error);
}

TEST_CASE("outgoing novelty: probe and commit-on-send") {
    const int npub = 6;
    novelty::OutgoingNoveltyTable table(npub, 1);
    const int sentinel = npub + 1;
    CHECK(table.sentinel() == sentinel);

    Bitset first = proj_of({0, 2}, npub);
    CHECK(table.probe(first, 0) == 1); // first transmission ever
    table.commit(first, 0);

    // identical to a previously SENT projection -> sentinel
    CHECK(table.probe(first, 0) == sentinel);

    // probe of a projection that was only probed (withheld), never sent:
    // the table is unchanged, so an identical later probe still sees novelty
    Bitset withheld = proj_of({0, 2, 4}, npub);
    CHECK(table.probe(withheld, 0) == 1);  // atom 4 unseen
    Bitset repeat = proj_of({4}, npub);
    CHECK(table.probe(repeat, 0) == 1); // 4 still unseen: withheld state never polluted the table

    // commit without a prior probe violates the two-phase contract
    Bitset never_probed = proj_of({1, 3}, npub);
    CHECK_THROWS_AS(table.commit(never_probed, 0), std::logic_error);

    // empty projection has no tuple at all
    Bitset empty(npub);
    CHECK(table.probe(empty, 0) == sentinel);
}

TEST_CASE("outgoing novelty at cap 2 distinguishes pairs") {
    const int npub = 5;
    novelty::OutgoingNoveltyTable table(npub, 2);
    Bitset a = proj_of({0}, npub), b = proj_of({1}, npub), ab = proj_of({0, 1}, npub);
    CHECK(table.probe(a, 0) == 1);
    table.commit(a, 0);
    CHECK(table.probe(b, 0) == 1);
    table.commit(b, 0);
    CHECK(table.probe(ab, 0) == 2); // no new atom, new pair
    table.commit(ab, 0);
    CHECK(table.probe(ab, 0) == table.sentinel());
}

TEST_CASE("probe/commit decisions match the brute-force oracle on random streams") {
    util::Rng rng(0xabcdef);
    for (int cap : {1, 2}) {
        for (int stream = 0; stream < 200; ++stream) {
            const int npub = 1 + static_cast<int>(rng.next_below(10));
            novelty::OutgoingNoveltyTable table(npub, cap);
            oracle::BruteNovelty ref(cap, npub + 1);
            const bool with_h = rng.next_below(2) == 0;
            for (int step = 0; step < 30; ++step) {
                std::vector<std::uint32_t> atoms;
                for (int a = 0; a < npub; ++a)
                    if (rng.next_below(3) == 0)
                        atoms.push_back(static_cast<std::uint32_t>(a));
                std::uint64_t key = with_h ? rng.next_below(3) : 0;
                Bitset proj = proj_of(atoms, static_cast<std::size_t>(npub));
                int got = table.probe(proj, key);
                int want = ref.probe(atoms, key);
                CHECK(got == want);
                if (got <= cap) { // send: both commit
                    table.commit(proj, key);
                    ref.commit(atoms, key);
                }
            }
        }
    }
}
