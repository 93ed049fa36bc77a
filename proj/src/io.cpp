#include "pcycle/io.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace pcycle {

namespace {

struct Token {
    std::string_view text;
    int line;
    int column;
};

class Tokenizer {
public:
    explicit Tokenizer(std::string_view s) : s_(s) {}

    bool next(Token& out) {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '\n') {
                ++line_;
                line_start_ = pos_ + 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= s_.size()) return false;
        const std::size_t begin = pos_;
        while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '\r' && s_[pos_] != '\n') ++pos_;
        out = Token{s_.substr(begin, pos_ - begin), line_, static_cast<int>(begin - line_start_) + 1};
        return true;
    }

    int line() const noexcept { return line_; }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

bool is_inf_token(std::string_view t) { return t == "inf" || t == "-"; }

Cost parse_int(const Token& t) {
    Cost v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw ParseError("expected an integer or inf, got '" + std::string(t.text) + "'", t.line, t.column);
    }
    if (v > kMaxEntry || v < -kMaxEntry) throw ParseError("entry out of range", t.line, t.column);
    return v;
}

}  // namespace

CostMatrix parse_matrix(std::string_view text) {
    Tokenizer tok(text);
    Token t;
    if (!tok.next(t)) throw ParseError("empty input", 1, 1);
    const Cost n = parse_int(t);
    if (n < 2) throw ParseError("n must be at least 2", t.line, t.column);
    if (n > 4096) throw ParseError("n too large", t.line, t.column);
    const int nn = static_cast<int>(n);
    std::vector<Cost> entries;
    entries.reserve(static_cast<std::size_t>(nn) * nn);
    int first_line = -1;
    int row_line = -1;
    int in_row = 0;
    while (tok.next(t)) {
        if (first_line < 0) first_line = t.line;
        if (in_row == 0) {
            row_line = t.line;
        } else if (t.line != row_line) {
            throw NonSquare("row ending on line " + std::to_string(row_line) + " has " + std::to_string(in_row) +
                            " entries, expected " + std::to_string(nn));
        }
        if (entries.size() == static_cast<std::size_t>(nn) * nn) {
            throw NonSquare("more than " + std::to_string(nn) + " rows (line " + std::to_string(t.line) + ")");
        }
        const std::size_t k = entries.size();
        const bool diag = static_cast<int>(k / nn) == static_cast<int>(k % nn);
        if (is_inf_token(t.text)) {
            if (!diag) throw ParseError("inf is only allowed on the diagonal", t.line, t.column);
            entries.push_back(kInf);
        } else {
            const Cost v = parse_int(t);
            if (diag) {
                throw DiagonalNotInf("diagonal entry (" + std::to_string(k / nn + 1) + "," + std::to_string(k / nn + 1) +
                                     ") must be inf");
            }
            entries.push_back(v);
        }
        if (++in_row == nn) in_row = 0;
    }
    if (in_row != 0) {
        throw NonSquare("row on line " + std::to_string(row_line) + " has " + std::to_string(in_row) +
                        " entries, expected " + std::to_string(nn));
    }
    if (entries.size() != static_cast<std::size_t>(nn) * nn) {
        throw NonSquare("expected " + std::to_string(nn) + " rows, got " + std::to_string(entries.size() / nn));
    }
    return CostMatrix(nn, std::move(entries));
}

CostMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

std::string render_matrix(const CostMatrix& m) {
    std::string out = std::to_string(m.size()) + "\n";
    for (Vertex i = 0; i < m.size(); ++i) {
        for (Vertex j = 0; j < m.size(); ++j) {
            if (j) out += ' ';
            out += is_inf(m(i, j)) ? std::string("inf") : std::to_string(m(i, j));
        }
        out += '\n';
    }
    return out;
}

CostMatrix gen_instance(int n, Cost max_cost, std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("n must be at least 2");
    if (max_cost < 1 || max_cost > kMaxEntry) throw InvalidArgument("max_cost must be in [1, 2^40]");
    std::mt19937_64 rng(seed);
    std::vector<Cost> e(static_cast<std::size_t>(n) * n, kInf);
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = 0; j < n; ++j) {
            if (i != j) e[static_cast<std::size_t>(i) * n + j] = 1 + static_cast<Cost>(rng() % static_cast<std::uint64_t>(max_cost));
        }
    }
    return CostMatrix(n, std::move(e));
}

std::uint64_t matrix_checksum(const CostMatrix& m) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : render_matrix(m)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

const CostMatrix& example2_matrix() {
    static const CostMatrix m = parse_matrix(
        "20\n"
        "inf 88 72 97 14 38 9 59 39 46 52 50 29 17 48 65 2 72 86 65\n"
        "80 inf 28 72 67 18 99 20 58 66 24 76 32 45 11 62 54 62 25 45\n"
        "5 40 inf 82 34 26 73 76 97 17 13 33 23 94 76 87 56 32 74 81\n"
        "29 76 77 inf 92 63 94 88 87 18 38 59 94 62 33 18 9 67 93 31\n"
        "17 32 60 80 inf 49 21 64 77 54 41 18 91 4 35 29 10 19 99 35\n"
        "21 19 31 75 19 inf 98 94 72 40 30 43 48 18 94 82 69 70 22 71\n"
        "1 99 82 68 4 35 inf 74 28 44 81 59 24 33 9 10 91 95 58 89\n"
        "1 49 71 49 52 30 52 inf 59 92 25 48 56 65 34 59 24 78 67 70\n"
        "92 99 49 6 63 79 66 19 inf 63 90 24 92 21 4 43 77 68 84 66\n"
        "46 65 2 4 80 54 92 92 72 inf 34 10 86 63 63 40 73 99 85 5\n"
        "11 14 81 18 91 37 46 51 32 23 inf 90 30 85 18 66 54 85 31 19\n"
        "43 1 52 64 6 39 79 89 39 44 77 inf 78 42 47 62 68 65 25 7\n"
        "19 82 93 76 20 80 15 81 15 87 45 67 inf 54 9 92 16 67 7 4\n"
        "84 73 89 90 56 96 31 52 28 26 23 54 19 inf 91 37 6 95 59 26\n"
        "84 53 65 42 65 54 62 81 90 80 98 52 59 44 inf 18 79 39 50 91\n"
        "13 5 77 60 81 5 88 17 58 48 62 12 59 20 48 inf 69 61 20 57\n"
        "46 48 25 59 8 83 83 24 28 1 19 75 17 28 82 75 inf 71 31 6\n"
        "31 50 84 98 26 80 67 51 83 80 82 90 42 9 3 26 68 inf 51 41\n"
        "53 89 6 44 58 48 26 17 64 88 63 63 87 61 42 57 32 59 inf 68\n"
        "43 6 73 51 49 52 14 56 35 18 24 80 65 47 6 55 91 85 84 inf\n");
    return m;
}

}  // namespace pcycle
