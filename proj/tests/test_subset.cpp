#include "doctest.h"

#include "robsel/subset.hpp"

using robsel::SourceSet;

TEST_CASE("subset basics") {
    const auto s = SourceSet::from_indices({0, 2, 5});
    CHECK(s.mask() == 0b100101);
    CHECK(s.count() == 3);
    CHECK(s.contains(2));
    CHECK(!s.contains(1));
    CHECK(s.with(1).mask() == 0b100111);
    CHECK(s.without(0).mask() == 0b100100);
    CHECK(s.indices() == std::vector<int>{0, 2, 5});
}

TEST_CASE("subset algebra") {
    const auto a = SourceSet::from_mask(0b0110);
    const auto b = SourceSet::from_mask(0b1100);
    CHECK((a & b).mask() == 0b0100);
    CHECK((a | b).mask() == 0b1110);
    CHECK((a - b).mask() == 0b0010);
    CHECK(a.subset_of(a | b));
    CHECK(!a.subset_of(b));
    CHECK(SourceSet::full(4).mask() == 0b1111);
    CHECK(SourceSet::full(0).empty());
    CHECK(SourceSet::full(64).count() == 64);
}

TEST_CASE("subset iteration ascends") {
    int previous = -1;
    for (int i : SourceSet::from_mask(0b1011010)) {
        CHECK(i > previous);
        previous = i;
    }
    CHECK(previous == 6);
}

TEST_CASE("subset rejects out-of-range indices") {
    CHECK_THROWS_AS(SourceSet::single(64), robsel::InvalidInputError);
    CHECK_THROWS_AS(SourceSet::from_indices({-1}), robsel::InvalidInputError);
    CHECK_THROWS_AS(SourceSet::full(65), robsel::InvalidInputError);
}
