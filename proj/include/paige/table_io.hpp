#pragma once
/**
 * @file table_io.hpp
 * @brief Text Cayley-table files.
 *
 * Layout:
 *
 *     n
 *     identity
 *     n lines of n space-separated 0-based indices (row i lists i*j)
 *     labels                      <- optional block
 *     n lines "i<TAB>label"
 */

#include <paige/loop.hpp>

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace paige {

inline void write_cayley_table(const FiniteLoop& loop, std::ostream& out, bool with_labels = true) {
    if (!loop.is_table_backed()) throw LoopError("only table-backed loops can be exported");
    const std::size_t n = loop.size();
    const auto& table = loop.table();
    out << n << '\n' << loop.identity() << '\n';
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        line.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j) line += ' ';
            line += std::to_string(table[i * n + j]);
        }
        line += '\n';
        out << line;
    }
    if (with_labels && loop.has_labels()) {
        out << "labels\n";
        for (Index i = 0; i < n; ++i) out << i << '\t' << loop.label(i) << '\n';
    }
}

/// Reads a table file; throws LoopError on malformed input or a non-Latin table.
inline FiniteLoop read_cayley_table(std::istream& in) {
    std::size_t n = 0;
    long long identity = -1;
    if (!(in >> n) || n == 0) throw LoopError("malformed table: bad order on line 1");
    if (!(in >> identity) || identity < 0) throw LoopError("malformed table: bad identity on line 2");
    std::vector<Index> table(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        long long v = -1;
        if (!(in >> v) || v < 0)
            throw LoopError("malformed table: bad entry in row " + std::to_string(i / n) + ", column " +
                            std::to_string(i % n));
        table[i] = static_cast<Index>(v);
    }
    std::string word;
    FiniteLoop::Labeler labeler;
    if (in >> word) {
        if (word != "labels") throw LoopError("malformed table: unexpected trailing token '" + word + "'");
        std::vector<std::string> labels(n);
        std::vector<char> seen(n, 0);
        std::string line;
        std::getline(in, line);
        for (std::size_t k = 0; k < n; ++k) {
            if (!std::getline(in, line)) throw LoopError("malformed table: label block too short");
            const auto tab = line.find('\t');
            if (tab == std::string::npos) throw LoopError("malformed table: label line without tab");
            std::size_t idx = n;
            try {
                std::size_t used = 0;
                idx = std::stoull(line.substr(0, tab), &used);
                if (used != tab) idx = n;
            } catch (const std::exception&) {
            }
            if (idx >= n || seen[idx]) throw LoopError("malformed table: bad label index");
            seen[idx] = 1;
            labels[idx] = line.substr(tab + 1);
        }
        labeler = [labels = std::move(labels)](Index i) { return labels[i]; };
    }
    if (static_cast<std::size_t>(identity) >= n) throw LoopError("malformed table: identity out of range");
    return FiniteLoop::from_table(n, static_cast<Index>(identity), std::move(table), std::move(labeler));
}

inline std::string to_table_text(const FiniteLoop& loop, bool with_labels = true) {
    std::ostringstream out;
    write_cayley_table(loop, out, with_labels);
    return out.str();
}

}  // namespace paige
