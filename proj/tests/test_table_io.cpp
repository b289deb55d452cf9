#include "loop_corpus.hpp"

#include <paige/table_io.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace paige;

TEST(TableIo, RoundTripIsBitExact) {
    for (const auto& [name, loop] : corpus::small_loops()) {
        const std::string text = to_table_text(loop);
        std::istringstream in(text);
        const auto back = read_cayley_table(in);
        EXPECT_EQ(back.size(), loop.size()) << name;
        EXPECT_EQ(back.identity(), loop.identity()) << name;
        EXPECT_EQ(back.table(), loop.table()) << name;
        EXPECT_EQ(to_table_text(back), text) << name;
    }
}

TEST(TableIo, LabelsSurvive) {
    const auto base = corpus::cyclic(3);
    const auto loop = FiniteLoop::from_table(3, 0, base.table(), [](Index i) { return "g^" + std::to_string(i); });
    const std::string text = to_table_text(loop);
    EXPECT_NE(text.find("labels\n0\tg^0\n"), std::string::npos);
    std::istringstream in(text);
    const auto back = read_cayley_table(in);
    ASSERT_TRUE(back.has_labels());
    EXPECT_EQ(back.label(2), "g^2");
    EXPECT_EQ(to_table_text(back), text);
    EXPECT_EQ(to_table_text(loop, false).find("labels"), std::string::npos);
}

TEST(TableIo, ExactLayout) {
    EXPECT_EQ(to_table_text(corpus::cyclic(2)), "2\n0\n0 1\n1 0\n");
}

TEST(TableIo, CorruptedFilesAreRejected) {
    const std::string good = to_table_text(corpus::symmetric3());
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        EXPECT_THROW(read_cayley_table(in), LoopError) << text;
    };
    // duplicate in a row: replace the second entry of row 1
    std::string dup = good;
    const auto row1 = dup.find('\n', dup.find('\n', dup.find('\n') + 1) + 1) + 1;
    dup[row1 + 2] = dup[row1];
    reject(dup);
    reject(good.substr(0, good.size() / 2));   // truncated
    reject("2\n0\n0 1\n1 x\n");                 // non-numeric
    reject("2\n0\n0 1\n1 2\n");                 // out of range
    reject("2\n5\n0 1\n1 0\n");                 // identity out of range
    reject("0\n0\n");
    reject("2\n0\n0 1\n1 0\nextra\n");
    reject("2\n0\n0 1\n1 0\nlabels\n0\ta\n");   // short label block
    reject("2\n0\n0 1\n1 0\nlabels\n0\ta\n0\tb\n");
    reject("2\n0\n0 1\n1 0\nlabels\nz\ta\n1\tb\n");
    reject("2\n1\n0 1\n1 0\n");                 // row 1 is not the identity row
}

TEST(TableIo, OracleBackedLoopCannotBeWritten) {
    const auto loop = FiniteLoop::from_oracle(50, 0, [](Index a, Index b) { return (a + b) % 50; });
    std::ostringstream out;
    EXPECT_THROW(write_cayley_table(loop, out), LoopError);
}
