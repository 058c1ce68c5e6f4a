#include <doctest.h>

#include <set>

#include "rstparse/oracle/trace.hpp"
#include "support.hpp"

using namespace rstparse;
using namespace rstparse::oracle;

TEST_CASE("single-EDU tree gives an empty trace") {
  auto tree = RstTree::make_leaf(1);
  SplitTrace trace = tree_to_trace(*tree);
  CHECK(trace.steps.empty());
  auto back = trace_to_tree(trace);
  CHECK(tree_equal(*back, *tree));
}

TEST_CASE("left-branching 3-EDU tree splits (1,3)@2 then (1,2)@1") {
  auto tree = RstTree::make_node(
      RstTree::make_node(RstTree::make_leaf(1), RstTree::make_leaf(2), Nuclearity::NS,
                         "Elaboration"),
      RstTree::make_leaf(3), Nuclearity::NN, "Joint");
  SplitTrace trace = tree_to_trace(*tree);
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0].lo == 1);
  CHECK(trace.steps[0].hi == 3);
  CHECK(trace.steps[0].split == 2);
  CHECK(trace.steps[0].relation == "Joint");
  CHECK(trace.steps[1].lo == 1);
  CHECK(trace.steps[1].hi == 2);
  CHECK(trace.steps[1].split == 1);
  CHECK(trace.steps[1].relation == "Elaboration");
  CHECK(tree_equal(*trace_to_tree(trace), *tree));
}

TEST_CASE("right-branching 4-EDU tree visits (1,4)@1, (2,4)@2, (3,4)@3") {
  auto tree = RstTree::make_node(
      RstTree::make_leaf(1),
      RstTree::make_node(
          RstTree::make_leaf(2),
          RstTree::make_node(RstTree::make_leaf(3), RstTree::make_leaf(4), Nuclearity::NN, "Joint"),
          Nuclearity::NN, "Joint"),
      Nuclearity::NN, "Joint");
  SplitTrace trace = tree_to_trace(*tree);
  REQUIRE(trace.steps.size() == 3);
  int expect[3][3] = {{1, 4, 1}, {2, 4, 2}, {3, 4, 3}};
  for (int i = 0; i < 3; ++i) {
    CHECK(trace.steps[static_cast<size_t>(i)].lo == expect[i][0]);
    CHECK(trace.steps[static_cast<size_t>(i)].hi == expect[i][1]);
    CHECK(trace.steps[static_cast<size_t>(i)].split == expect[i][2]);
  }
}

TEST_CASE("depth-first order: whole left subtree precedes the right one") {
  // ((1,2),(3,4)): after the root split, (1,2) must be processed before (3,4).
  auto tree = RstTree::make_node(
      RstTree::make_node(RstTree::make_leaf(1), RstTree::make_leaf(2), Nuclearity::NS, "Cause"),
      RstTree::make_node(RstTree::make_leaf(3), RstTree::make_leaf(4), Nuclearity::SN, "Contrast"),
      Nuclearity::NN, "Joint");
  SplitTrace trace = tree_to_trace(*tree);
  REQUIRE(trace.steps.size() == 3);
  CHECK(trace.steps[1].lo == 1);
  CHECK(trace.steps[1].hi == 2);
  CHECK(trace.steps[2].lo == 3);
  CHECK(trace.steps[2].hi == 4);
}

TEST_CASE("empty trace reconstructs Leaf(1)") {
  SplitTrace trace;
  auto tree = trace_to_tree(trace);
  CHECK(tree->is_leaf());
  CHECK(tree->edu == 1);
}

TEST_CASE("round trip over 1000 random labeled trees") {
  Rng rng(314159);
  for (int trial = 0; trial < 1000; ++trial) {
    int m = 1 + static_cast<int>(rng.index(50));
    auto tree = testsup::random_binary_tree(rng, m);
    SplitTrace trace = tree_to_trace(*tree, "t" + std::to_string(trial));
    CHECK(trace.step_count() == m - 1);
    auto back = trace_to_tree(trace);
    CHECK(tree_equal(*back, *tree));
  }
}

TEST_CASE("every span appears exactly once in a trace") {
  Rng rng(42);
  auto tree = testsup::random_binary_tree(rng, 20);
  SplitTrace trace = tree_to_trace(*tree);
  std::set<std::pair<int, int>> seen;
  for (const auto& s : trace.steps) CHECK(seen.insert({s.lo, s.hi}).second);
}

TEST_CASE("trace with k == j is rejected") {
  SplitTrace trace;
  trace.steps.push_back({1, 3, 3, Nuclearity::NN, "Joint"});
  CHECK_THROWS_AS(trace_to_tree(trace), TraceError);
}

TEST_CASE("trace with a wrong span is rejected and names the step") {
  SplitTrace trace;
  trace.steps.push_back({1, 3, 1, Nuclearity::NN, "Joint"});
  trace.steps.push_back({2, 4, 2, Nuclearity::NN, "Joint"});  // should be (2,3)
  CHECK_THROWS_WITH_AS(trace_to_tree(trace), doctest::Contains("step 2"), TraceError);
}

TEST_CASE("truncated trace is rejected") {
  SplitTrace trace;
  trace.steps.push_back({1, 4, 2, Nuclearity::NN, "Joint"});
  CHECK_THROWS_AS(trace_to_tree(trace), TraceError);
}

TEST_CASE("labels_included=false drops labels") {
  Rng rng(8);
  auto tree = testsup::random_binary_tree(rng, 6);
  auto unlabeled = trace_to_tree(tree_to_trace(*tree), /*labels_included=*/false);
  CHECK(unlabeled->relation.empty());
  CHECK(unlabeled->span_hi == 6);
}

TEST_CASE("trace text dump round-trips") {
  Rng rng(55);
  auto tree = testsup::random_binary_tree(rng, 9);
  SplitTrace trace = tree_to_trace(*tree, "d");
  std::string text = trace_to_text(trace);
  SplitTrace back = trace_from_text(text, "d");
  REQUIRE(back.steps.size() == trace.steps.size());
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    CHECK(back.steps[i].lo == trace.steps[i].lo);
    CHECK(back.steps[i].hi == trace.steps[i].hi);
    CHECK(back.steps[i].split == trace.steps[i].split);
    CHECK(back.steps[i].nuc == trace.steps[i].nuc);
    CHECK(back.steps[i].relation == trace.steps[i].relation);
  }
  CHECK(tree_equal(*trace_to_tree(back), *tree));
}
