#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "treeperm/canonical.hpp"
#include "treeperm/tree.hpp"

using namespace treeperm;

namespace {

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST(Builders, Path) {
    EXPECT_EQ(build_path(2).edges().size(), 1u);
    Tree p4 = build_path(4);
    EXPECT_EQ(degree_sequence(p4), (std::vector<int>{2, 2, 1, 1}));
    EXPECT_THROW(build_path(1), DomainError);
    EXPECT_TRUE(isomorphic(build_path(3), build_star(3)));
}

TEST(Builders, Star) {
    Tree s5 = build_star(5);
    EXPECT_EQ(degree_sequence(s5), (std::vector<int>{4, 1, 1, 1, 1}));
    EXPECT_EQ(degree_sequence(build_star(3)), (std::vector<int>{2, 1, 1}));
    EXPECT_THROW(build_star(1), DomainError);
}

TEST(Builders, Family) {
    Tree t = build_family(FamilySpec({3, 4, 3}));
    EXPECT_EQ(t.n(), 23);

    Tree t333 = build_family(FamilySpec({3, 3, 3}));
    std::vector<int> expect{5, 4, 4};
    expect.insert(expect.end(), 9, 2);
    expect.insert(expect.end(), 9, 1);
    EXPECT_EQ(degree_sequence(t333), expect);

    EXPECT_TRUE(isomorphic(build_family(FamilySpec({0, 0})), build_path(2)));
    EXPECT_THROW(FamilySpec({}), DomainError);
    EXPECT_THROW(FamilySpec({-1, 2}), DomainError);
    EXPECT_THROW(FamilySpec({0}), DomainError);
}

TEST(Builders, FamilyVertexCount) {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        int m = 1 + static_cast<int>(rng() % 5);
        std::vector<int> a(m);
        for (int& x : a) x = static_cast<int>(rng() % 5);
        if (m == 1 && a[0] == 0) a[0] = 1;
        FamilySpec spec(a);
        Tree t = build_family(spec);
        EXPECT_EQ(t.n(), m + 2 * std::accumulate(a.begin(), a.end(), 0));
    }
}

TEST(Builders, Spider) {
    Tree s21 = build_spider(21);
    std::vector<int> expect{10};
    expect.insert(expect.end(), 10, 2);
    expect.insert(expect.end(), 10, 1);
    EXPECT_EQ(degree_sequence(s21), expect);
    EXPECT_TRUE(isomorphic(build_spider(3), build_path(3)));
    EXPECT_EQ(degree_sequence(build_spider(9)), (std::vector<int>{4, 2, 2, 2, 2, 1, 1, 1, 1}));
    EXPECT_THROW(build_spider(8), DomainError);
    EXPECT_THROW(build_spider(2), DomainError);
    // spider == its family form
    EXPECT_TRUE(isomorphic(build_spider(9), build_family(FamilySpec({4}))));
}

TEST(Builders, DoubleSpider) {
    Tree t = build_double_spider(36, 19, 17);
    EXPECT_EQ(t.n(), 36);
    EXPECT_TRUE(isomorphic(t, build_family(FamilySpec({9, 8}))));
    EXPECT_TRUE(isomorphic(build_double_spider(38, 19, 19), build_family(FamilySpec({9, 9}))));
    // smallest case: S(6,3,3) = T(1,1), which is just P6
    Tree h = build_double_spider(6, 3, 3);
    EXPECT_TRUE(isomorphic(h, build_family(FamilySpec({1, 1}))));
    EXPECT_TRUE(isomorphic(h, build_path(6)));
    EXPECT_THROW(build_double_spider(36, 18, 18), DomainError);
    EXPECT_THROW(build_double_spider(10, 3, 5), DomainError);
}

TEST(TreeInvariants, ConnectivityRejected) {
    EXPECT_THROW(Tree(4, {{0, 1}, {2, 3}, {0, 1}}), DomainError);  // parallel edge
    EXPECT_THROW(Tree(4, {{0, 1}, {1, 2}}), DomainError);          // wrong count
    EXPECT_THROW(Tree(3, {{0, 1}, {2, 2}}), DomainError);          // loop
    EXPECT_THROW(Tree(3, {{0, 1}, {0, 3}}), DomainError);          // out of range
}

TEST(DegreeSequence, SumsToTwiceEdges) {
    std::mt19937_64 rng(7);
    for (int n : {2, 5, 9, 16}) {
        Tree t = build_family(FamilySpec({1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}));
        auto d = degree_sequence(t);
        EXPECT_TRUE(std::is_sorted(d.rbegin(), d.rend()));
        EXPECT_EQ(std::accumulate(d.begin(), d.end(), 0), 2 * (t.n() - 1));
        (void)n;
    }
}

TEST(Canonical, SameTreeSameCode) {
    EXPECT_EQ(canonical_code(build_path(3)), canonical_code(build_star(3)));
    EXPECT_NE(canonical_code(build_path(4)), canonical_code(build_star(4)));
}

TEST(Canonical, HeadlineNonIsomorphism) {
    Tree t333 = build_family(FamilySpec({3, 3, 3}));
    Tree s21 = build_spider(21);
    EXPECT_EQ(t333.n(), s21.n());
    EXPECT_NE(canonical_code(t333), canonical_code(s21));
}

TEST(Canonical, RelabelingInvariance) {
    std::mt19937_64 rng(2025);
    std::vector<Tree> fixtures;
    fixtures.push_back(build_path(9));
    fixtures.push_back(build_star(8));
    fixtures.push_back(build_family(FamilySpec({3, 4, 3})));
    fixtures.push_back(build_spider(13));
    fixtures.push_back(build_double_spider(10, 5, 5));
    for (const Tree& t : fixtures) {
        CanonicalCode base = canonical_code(t);
        for (int i = 0; i < 100; ++i)
            EXPECT_EQ(canonical_code(relabel(t, random_perm(t.n(), rng))), base);
    }
}

TEST(Canonical, DistinctDegreeSequencesDistinctCodes) {
    std::vector<Tree> trees;
    trees.push_back(build_path(7));
    trees.push_back(build_star(7));
    trees.push_back(build_spider(7));
    trees.push_back(build_family(FamilySpec({1, 2})));
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = i + 1; j < trees.size(); ++j)
            if (degree_sequence(trees[i]) != degree_sequence(trees[j]))
                EXPECT_NE(canonical_code(trees[i]), canonical_code(trees[j]));
}

TEST(Canonical, BalancedParens) {
    CanonicalCode c = canonical_code(build_family(FamilySpec({2, 1})));
    int depth = 0;
    for (char ch : c.parens) {
        ASSERT_TRUE(ch == '(' || ch == ')');
        depth += ch == '(' ? 1 : -1;
        ASSERT_GE(depth, 0);
    }
    EXPECT_EQ(depth, 0);
    EXPECT_EQ(c.parens.size(), 2u * 7u);
    EXPECT_TRUE(isomorphic(tree_from_code(c), build_family(FamilySpec({2, 1}))));
}

TEST(ParseSpec, Dispatch) {
    EXPECT_TRUE(isomorphic(parse_tree_spec("T:3,4,3"), build_family(FamilySpec({3, 4, 3}))));
    EXPECT_TRUE(isomorphic(parse_tree_spec("path:5"), build_path(5)));
    EXPECT_TRUE(isomorphic(parse_tree_spec("star:6"), build_star(6)));
    EXPECT_TRUE(isomorphic(parse_tree_spec("S:21,10"), build_spider(21)));
    EXPECT_TRUE(isomorphic(parse_tree_spec("S:36,19,17"), build_double_spider(36, 19, 17)));
    Tree star4 = parse_tree_spec("edges:0-1,1-2,1-3");
    EXPECT_TRUE(isomorphic(star4, build_star(4)));
    EXPECT_EQ(star4.degree(1), 3);
}

TEST(ParseSpec, ErrorsCarryPositions) {
    try {
        parse_tree_spec("S:8,4");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.pos(), 2u);
        EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
    }
    EXPECT_THROW(parse_tree_spec("path:x"), ParseError);
    EXPECT_THROW(parse_tree_spec("path:1"), ParseError);
    EXPECT_THROW(parse_tree_spec("nope:3"), ParseError);
    EXPECT_THROW(parse_tree_spec("edges:0-1,2-3"), ParseError);   // disconnected
    EXPECT_THROW(parse_tree_spec("edges:0-1,"), ParseError);      // dangling comma
    EXPECT_THROW(parse_tree_spec("T:3,4,3junk"), ParseError);     // trailing
    EXPECT_THROW(parse_tree_spec("S:9"), ParseError);             // wrong arity
    EXPECT_THROW(parse_tree_spec("T:0"), ParseError);             // single core needs a1 >= 1
}
