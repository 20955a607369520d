#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "hunkbench/conflict_markers.hpp"
#include "hunkbench/error.hpp"
#include "hunkbench/merge.hpp"

namespace hunkbench {
namespace {

using testing::TempDir;

MergeOutcome merge_text(const std::string& base, const std::string& left, const std::string& right) {
    return merge3(LineSeq::split(base), LineSeq::split(left), LineSeq::split(right));
}

TEST(Merge3, OneSidedChangeIsTaken) {
    const auto out = merge_text("a\nb\nc\n", "a\nb\nc\n", "a\nB\nc\n");
    ASSERT_TRUE(out.clean());
    EXPECT_EQ(out.take_left().render(), "a\nB\nc\n");
}

TEST(Merge3, IdenticalChangesMergeOnce) {
    const auto out = merge_text("a\nb\nc\n", "a\nX\nc\n", "a\nX\nc\n");
    ASSERT_TRUE(out.clean());
    EXPECT_EQ(out.take_left().render(), "a\nX\nc\n");
}

TEST(Merge3, DifferentChangesConflict) {
    const auto out = merge3(LineSeq{"a"}, LineSeq{"b"}, LineSeq{"c"});
    ASSERT_EQ(out.regions.size(), 1u);
    ASSERT_EQ(out.conflict_count(), 1u);
    const auto& c = out.conflict(0);
    EXPECT_EQ(c.left.lines, std::vector<std::string>{"b"});
    EXPECT_EQ(c.base.lines, std::vector<std::string>{"a"});
    EXPECT_EQ(c.right.lines, std::vector<std::string>{"c"});
}

TEST(Merge3, ConflictKeepsSurroundingStableLines) {
    const auto out = merge_text("1\n2\nx\n3\n4\n", "1\n2\nL\n3\n4\n", "1\n2\nR\n3\n4\n");
    ASSERT_EQ(out.regions.size(), 3u);
    EXPECT_EQ(std::get<StableRegion>(out.regions[0]).lines.lines, (std::vector<std::string>{"1", "2"}));
    EXPECT_EQ(std::get<StableRegion>(out.regions[2]).lines.lines, (std::vector<std::string>{"3", "4"}));
    EXPECT_EQ(out.conflict_region_index(0), 1u);
    EXPECT_THROW(out.conflict_region_index(1), std::out_of_range);
}

TEST(Merge3, NoAdjacentConflicts) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto t = testing::random_triple(rng);
        const auto out = merge_text(t.base, t.left, t.right);
        for (std::size_t k = 1; k < out.regions.size(); ++k) {
            ASSERT_FALSE(std::holds_alternative<ConflictRegion>(out.regions[k - 1]) &&
                         std::holds_alternative<ConflictRegion>(out.regions[k]));
        }
    }
}

TEST(Merge3, TakingEitherSideGivesThatSideWhereClean) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
        const auto t = testing::random_triple(rng);
        const auto out = merge_text(t.base, t.left, t.right);
        if (out.clean()) continue;
        // One side of every conflict plus the stable text is a whole document.
        EXPECT_NO_THROW(out.take_left().render());
        EXPECT_NO_THROW(out.take_right().render());
    }
}

TEST(Merge3, SymmetricUnderSideSwap) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const auto t = testing::random_triple(rng);
        const auto lr = merge_text(t.base, t.left, t.right);
        const auto rl = merge_text(t.base, t.right, t.left);
        ASSERT_EQ(lr.conflict_count(), rl.conflict_count());
        ASSERT_EQ(lr.regions.size(), rl.regions.size());
        for (std::size_t k = 0; k < lr.regions.size(); ++k) {
            if (const auto* c = std::get_if<ConflictRegion>(&lr.regions[k])) {
                const auto& d = std::get<ConflictRegion>(rl.regions[k]);
                ASSERT_EQ(c->left.lines, d.right.lines);
                ASSERT_EQ(c->right.lines, d.left.lines);
                ASSERT_EQ(c->base.lines, d.base.lines);
            }
        }
    }
}

TEST(Merge3, CoalesceGapJoinsNearbyConflicts) {
    const std::string base = "a\nx\nk\ny\nb\n";
    const std::string left = "a\nX1\nk\nY1\nb\n";
    const std::string right = "a\nX2\nk\nY2\nb\n";
    EXPECT_EQ(merge_text(base, left, right).conflict_count(), 2u);
    MergeOptions opts;
    opts.coalesce_gap = 2;
    const auto joined = merge3(LineSeq::split(base), LineSeq::split(left), LineSeq::split(right), opts);
    ASSERT_EQ(joined.conflict_count(), 1u);
    EXPECT_EQ(joined.conflict(0).left.lines, (std::vector<std::string>{"X1", "k", "Y1"}));
    EXPECT_EQ(joined.conflict(0).base.lines, (std::vector<std::string>{"x", "k", "y"}));
}

TEST(Merge3, VerdictAndTextMatchGitMergeFile) {
    TempDir scratch;
    std::mt19937_64 rng(2024);
    const MarkerLabels labels{"left", "base", "right"};
    for (int i = 0; i < 400; ++i) {
        const auto t = testing::random_triple(rng);
        const auto git = testing::git_merge_file(t.base, t.left, t.right, scratch);
        ASSERT_GE(git.exit_code, 0);
        const auto ours = merge_text(t.base, t.left, t.right);
        ASSERT_EQ(ours.conflict_count(), static_cast<std::size_t>(git.exit_code))
            << "base:\n" << t.base << "left:\n" << t.left << "right:\n" << t.right;
        ASSERT_EQ(render_conflict(ours, labels), git.out)
            << "base:\n" << t.base << "left:\n" << t.left << "right:\n" << t.right;
    }
}

TEST(Merge3, RenderMatchesGitOnSourceLikeFile) {
    TempDir scratch;
    const std::string base = "class A {\n  int x = 0;\n  int y = 0;\n\n  void f() {\n    g();\n  }\n}\n";
    const std::string left = "class A {\n  int x = 1;\n  int y = 0;\n\n  void f() {\n    g();\n    h();\n  }\n}\n";
    const std::string right = "class A {\n  int x = 2;\n  int y = 0;\n\n  void f() {\n    k();\n  }\n}\n";
    const auto git = testing::git_merge_file(base, left, right, scratch);
    const auto ours = merge_text(base, left, right);
    EXPECT_EQ(ours.conflict_count(), static_cast<std::size_t>(git.exit_code));
    EXPECT_EQ(render_conflict(ours, {"left", "base", "right"}), git.out);
}

TEST(ConflictMarkers, RecognisesOnlySevenCharMarkersAtColumnZero) {
    EXPECT_EQ(marker_kind("<<<<<<<"), MarkerKind::open);
    EXPECT_EQ(marker_kind("<<<<<<< ours"), MarkerKind::open);
    EXPECT_EQ(marker_kind("|||||||"), MarkerKind::base);
    EXPECT_EQ(marker_kind("======="), MarkerKind::separator);
    EXPECT_EQ(marker_kind(">>>>>>> theirs"), MarkerKind::close);
    EXPECT_FALSE(marker_kind("<<<<<<<<"));
    EXPECT_FALSE(marker_kind(" <<<<<<<"));
    EXPECT_FALSE(marker_kind("<<<<<<"));
    EXPECT_FALSE(marker_kind("======= x"));
    EXPECT_FALSE(marker_kind("<<<<<<<x"));
}

TEST(ConflictMarkers, RendersDiff3Layout) {
    MergeOutcome o;
    o.regions.emplace_back(ConflictRegion{LineSeq{"L"}, LineSeq{"B"}, LineSeq{"R"}});
    EXPECT_EQ(render_conflict(o), "<<<<<<<\nL\n|||||||\nB\n=======\nR\n>>>>>>>\n");
    EXPECT_EQ(render_conflict(o, {"ours", "base", "theirs"}),
              "<<<<<<< ours\nL\n||||||| base\nB\n=======\nR\n>>>>>>> theirs\n");
}

TEST(ConflictMarkers, AllStableRendersPlainDocument) {
    MergeOutcome o;
    o.regions.emplace_back(StableRegion{LineSeq::split("a\nb\n")});
    EXPECT_EQ(render_conflict(o), "a\nb\n");
}

TEST(ConflictMarkers, RefusesMarkerLikeContent) {
    MergeOutcome o;
    o.regions.emplace_back(StableRegion{LineSeq{"=======", "x"}});
    EXPECT_THROW(render_conflict(o), MarkerInContent);
}

TEST(ConflictMarkers, ParseWithoutMarkersIsOneStableRegion) {
    const auto o = parse_conflict("a\nb\n");
    ASSERT_EQ(o.regions.size(), 1u);
    EXPECT_EQ(std::get<StableRegion>(o.regions[0]).lines.lines, (std::vector<std::string>{"a", "b"}));
}

TEST(ConflictMarkers, RoundTripOnRandomMerges) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const auto t = testing::random_triple(rng);
        const auto out = merge_text(t.base, t.left, t.right);
        ASSERT_EQ(parse_conflict(render_conflict(out, {"a", "b", "c"})), out)
            << "base:\n" << t.base << "left:\n" << t.left << "right:\n" << t.right;
    }
}

TEST(ConflictMarkers, ParseAcceptsTwoSectionConflicts) {
    const auto o = parse_conflict("x\n<<<<<<< HEAD\nL\n=======\nR\n>>>>>>> b\ny\n");
    ASSERT_EQ(o.conflict_count(), 1u);
    EXPECT_FALSE(o.conflict(0).has_base);
    EXPECT_EQ(o.conflict(0).left.lines, std::vector<std::string>{"L"});
    EXPECT_EQ(o.conflict(0).right.lines, std::vector<std::string>{"R"});
}

TEST(ConflictMarkers, ParseRejectsMalformedMarkers) {
    EXPECT_THROW(parse_conflict("<<<<<<<\nL\n=======\nR\n"), MalformedMarkers);
    EXPECT_THROW(parse_conflict("L\n=======\nR\n>>>>>>>\n"), MalformedMarkers);
    EXPECT_THROW(parse_conflict("<<<<<<<\n<<<<<<<\nL\n=======\nR\n>>>>>>>\n"), MalformedMarkers);
    EXPECT_THROW(parse_conflict("<<<<<<<\nL\n=======\n|||||||\nB\n>>>>>>>\n"), MalformedMarkers);
    EXPECT_THROW(parse_conflict(">>>>>>>\n"), MalformedMarkers);
}

}  // namespace
}  // namespace hunkbench
