#pragma once

// Identity corpus files.
//
//   # comment
//   [entry]
//   name = "dissect2-f3-over-f1"
//   kind = "equality"
//   lhs = "f3/f1"
//   rhs = "..."
//   order = 500
//   ref = "2-dissection of f3/f1"
//
// Kinds and their keys:
//   equality       lhs, rhs, [order]
//   congruence     lhs, rhs, modulus, [order]
//                  or base, m, j, modulus, [nmax]   (progression scan)
//   frobenius      p, a, b, [order]
//   convolution    [nmax]
//   empty-support  m, j, [nmax]
//   oracle-match   expr, oracle, [order]

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "oracles.hpp"
#include "verify.hpp"

namespace qseries {

inline constexpr std::size_t default_order = 500;
inline constexpr std::size_t default_nmax = 2000;

enum class EntryKind { equality, congruence, frobenius, convolution, empty_support, oracle_match };

struct CorpusEntry {
    std::string name;
    std::string ref;
    EntryKind kind = EntryKind::equality;
    std::size_t line = 0; // of the [entry] header

    ExprPtr lhs;
    ExprPtr rhs;
    ExprPtr base;
    ExprPtr expr;
    std::optional<std::size_t> m, j, order, nmax, p, a, b;
    std::optional<integer> modulus;
    std::optional<OracleKind> oracle;
};

struct Corpus {
    std::vector<CorpusEntry> entries;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

struct raw_value {
    std::string text;
    bool quoted;
    std::size_t line;
};

struct raw_entry {
    std::size_t line;
    std::map<std::string, raw_value> fields;
};

inline EntryKind parse_entry_kind(const std::string& s, std::size_t line) {
    if (s == "equality") return EntryKind::equality;
    if (s == "congruence") return EntryKind::congruence;
    if (s == "frobenius") return EntryKind::frobenius;
    if (s == "convolution") return EntryKind::convolution;
    if (s == "empty-support") return EntryKind::empty_support;
    if (s == "oracle-match") return EntryKind::oracle_match;
    throw corpus_error(line, "unknown kind '" + s + "'");
}

class entry_builder {
public:
    explicit entry_builder(raw_entry raw) : raw_(std::move(raw)) {}

    CorpusEntry build() {
        CorpusEntry e;
        e.line = raw_.line;
        e.name = required_string("name");
        if (e.name.empty()) {
            throw corpus_error(raw_.line, "entry name must not be empty");
        }
        e.kind = parse_entry_kind(required_string("kind"), field("kind").line);
        e.ref = optional_string("ref").value_or("");
        e.order = optional_number("order");
        e.nmax = optional_number("nmax");
        switch (e.kind) {
        case EntryKind::equality:
            e.lhs = expression("lhs");
            e.rhs = expression("rhs");
            break;
        case EntryKind::congruence:
            e.modulus = modulus();
            if (raw_.fields.count("base")) {
                e.base = expression("base");
                e.m = required_number("m");
                e.j = required_number("j");
                if (*e.m == 0 || *e.j >= *e.m) {
                    throw corpus_error(raw_.line, "need 0 <= j < m");
                }
            } else {
                e.lhs = expression("lhs");
                e.rhs = expression("rhs");
            }
            break;
        case EntryKind::frobenius:
            e.p = required_number("p");
            e.a = required_number("a");
            e.b = required_number("b");
            break;
        case EntryKind::convolution:
            break;
        case EntryKind::empty_support:
            e.m = required_number("m");
            e.j = required_number("j");
            if (*e.m == 0 || *e.j >= *e.m) {
                throw corpus_error(raw_.line, "need 0 <= j < m");
            }
            break;
        case EntryKind::oracle_match: {
            e.expr = expression("expr");
            const auto& f = field("oracle");
            try {
                e.oracle = parse_oracle_kind(f.text);
            } catch (const error& ex) {
                throw corpus_error(f.line, ex.what());
            }
            break;
        }
        }
        for (const auto& [key, value] : raw_.fields) {
            if (!used_.count(key)) {
                throw corpus_error(value.line, "key '" + key + "' does not apply to this kind of entry");
            }
        }
        return e;
    }

private:
    raw_entry raw_;
    std::set<std::string> used_;

    const raw_value& field(const std::string& key) {
        auto it = raw_.fields.find(key);
        if (it == raw_.fields.end()) {
            throw corpus_error(raw_.line, "missing key '" + key + "'");
        }
        used_.insert(key);
        return it->second;
    }

    std::string required_string(const std::string& key) {
        const auto& v = field(key);
        if (!v.quoted) {
            throw corpus_error(v.line, "'" + key + "' must be a quoted string");
        }
        return v.text;
    }

    std::optional<std::string> optional_string(const std::string& key) {
        if (!raw_.fields.count(key)) {
            return std::nullopt;
        }
        return required_string(key);
    }

    std::size_t required_number(const std::string& key) {
        const auto& v = field(key);
        if (v.quoted || v.text.empty() || v.text.size() > 18 ||
            !std::all_of(v.text.begin(), v.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw corpus_error(v.line, "'" + key + "' must be a non-negative integer");
        }
        return static_cast<std::size_t>(std::stoull(v.text));
    }

    std::optional<std::size_t> optional_number(const std::string& key) {
        if (!raw_.fields.count(key)) {
            return std::nullopt;
        }
        return required_number(key);
    }

    integer modulus() {
        const std::size_t m = required_number("modulus");
        if (m < 2) {
            throw corpus_error(field("modulus").line, "modulus must be at least 2");
        }
        return integer(static_cast<unsigned long>(m));
    }

    ExprPtr expression(const std::string& key) {
        const std::string text = required_string(key);
        try {
            return parse(text);
        } catch (const error& ex) {
            throw corpus_error(field(key).line, key + ": " + ex.what());
        }
    }
};

inline raw_value parse_value(std::string_view v, std::size_t line) {
    if (v.empty()) {
        throw corpus_error(line, "missing value");
    }
    if (v.front() != '"') {
        return {std::string(v), false, line};
    }
    std::string out;
    std::size_t i = 1;
    for (; i < v.size() && v[i] != '"'; ++i) {
        if (v[i] == '\\' && i + 1 < v.size()) {
            ++i;
        }
        out += v[i];
    }
    if (i >= v.size()) {
        throw corpus_error(line, "unterminated string");
    }
    std::string_view rest = trim(v.substr(i + 1));
    if (!rest.empty() && rest.front() != '#') {
        throw corpus_error(line, "unexpected text after string");
    }
    return {std::move(out), true, line};
}

} // namespace detail

/// Parses corpus text. Errors carry the 1-based line number.
inline Corpus parse_corpus(std::string_view text) {
    std::vector<detail::raw_entry> raw;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = detail::trim(line);
        if (s.empty() || s.front() == '#') {
            continue;
        }
        if (s == "[entry]") {
            raw.push_back({line_no, {}});
            continue;
        }
        if (s.front() == '[') {
            throw corpus_error(line_no, "unknown section " + std::string(s));
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw corpus_error(line_no, "expected 'key = value'");
        }
        if (raw.empty()) {
            throw corpus_error(line_no, "key outside of an [entry] block");
        }
        std::string key(detail::trim(s.substr(0, eq)));
        std::string_view value = detail::trim(s.substr(eq + 1));
        if (!value.empty() && value.front() != '"') {
            if (auto hash = value.find('#'); hash != std::string_view::npos) {
                value = detail::trim(value.substr(0, hash));
            }
        }
        if (raw.back().fields.count(key)) {
            throw corpus_error(line_no, "duplicate key '" + key + "'");
        }
        raw.back().fields.emplace(key, detail::parse_value(value, line_no));
    }

    Corpus corpus;
    std::set<std::string> names;
    for (auto& r : raw) {
        CorpusEntry e = detail::entry_builder(std::move(r)).build();
        if (!names.insert(e.name).second) {
            throw corpus_error(e.line, "duplicate entry name '" + e.name + "'");
        }
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw error("cannot open corpus file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

struct RunOptions {
    std::optional<std::size_t> order; // overrides every entry's order
    std::optional<std::size_t> nmax;  // overrides every entry's nmax
};

inline Report run_entry(const CorpusEntry& e, const RunOptions& opt = {}) {
    const std::size_t order = opt.order.value_or(e.order.value_or(default_order));
    switch (e.kind) {
    case EntryKind::equality:
        return check_identity({e.name, e.lhs, e.rhs, CheckKind::equality, std::nullopt, order});
    case EntryKind::congruence:
        if (e.base) {
            return check_congruence_progression(*e.base, *e.m, *e.j, *e.modulus,
                                                opt.nmax.value_or(e.nmax.value_or(default_nmax)), e.name);
        }
        return check_identity({e.name, e.lhs, e.rhs, CheckKind::congruence, e.modulus, order});
    case EntryKind::frobenius:
        return check_frobenius(*e.p, *e.a, *e.b, order, e.name);
    case EntryKind::convolution:
        return check_convolution(opt.nmax.value_or(e.nmax.value_or(1000)), e.name);
    case EntryKind::empty_support:
        return check_empty_support(*e.m, *e.j, opt.nmax.value_or(e.nmax.value_or(default_nmax)), e.name);
    case EntryKind::oracle_match:
        return check_oracle_match(*e.expr, *e.oracle, order, e.name);
    }
    throw error("unreachable entry kind");
}

/// Either a report or the message of the error that prevented one.
struct EntryOutcome {
    std::variant<Report, std::string> result;

    bool passed() const { return std::holds_alternative<Report>(result) && std::get<Report>(result).passed(); }
    bool errored() const { return std::holds_alternative<std::string>(result); }
};

/// Runs the entries on up to `threads` workers; outcomes are in corpus order.
inline std::vector<EntryOutcome> run_corpus(const std::vector<const CorpusEntry*>& entries, const RunOptions& opt = {},
                                            unsigned threads = std::thread::hardware_concurrency()) {
    std::vector<EntryOutcome> out(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            try {
                out[i].result = run_entry(*entries[i], opt);
            } catch (const std::exception& ex) {
                out[i].result = std::string(ex.what());
            }
        }
    };
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(entries.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    return out;
}

} // namespace qseries
