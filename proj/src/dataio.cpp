#include "dualavg/dataio.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dualavg/rng.hpp"

namespace dualavg {

namespace {

// from_chars rejects a leading '+', which LibSVM labels routinely carry.
std::string_view drop_plus(std::string_view tok) {
    if (tok.size() > 1 && tok[0] == '+' && tok[1] != '+' && tok[1] != '-') tok.remove_prefix(1);
    return tok;
}

bool parse_double(std::string_view tok, double& out) {
    tok = drop_plus(tok);
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_long(std::string_view tok, long& out) {
    tok = drop_plus(tok);
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

}  // namespace

Dataset parse_libsvm(const std::string& text) {
    Dataset data;
    std::set<long> raw_labels;
    std::vector<long> per_example_label;

    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (eol == std::string::npos ? text.size() : eol) - pos);
        pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        auto toks = split_ws(line);
        if (toks.empty()) continue;

        // Labels must be integral; accept forms like "+1", "-1", "2", "1.0".
        double label_d;
        if (!parse_double(toks[0], label_d))
            throw ParseError(line_no, "non-numeric label '" + std::string(toks[0]) + "'");
        long label = static_cast<long>(label_d);
        if (static_cast<double>(label) != label_d)
            throw ParseError(line_no, "non-integral label '" + std::string(toks[0]) + "'");

        SparseExample ex;
        long prev_idx = 0;
        for (std::size_t k = 1; k < toks.size(); ++k) {
            std::string_view tok = toks[k];
            std::size_t colon = tok.find(':');
            if (colon == std::string_view::npos)
                throw ParseError(line_no, "malformed feature token '" + std::string(tok) + "'");
            long idx;
            double val;
            if (!parse_long(tok.substr(0, colon), idx))
                throw ParseError(line_no, "non-numeric index in '" + std::string(tok) + "'");
            if (idx <= 0)
                throw ParseError(line_no, "nonpositive index " + std::to_string(idx));
            if (idx <= prev_idx)
                throw ParseError(line_no, "non-increasing index " + std::to_string(idx));
            if (!parse_double(tok.substr(colon + 1), val))
                throw ParseError(line_no, "non-numeric value in '" + std::string(tok) + "'");
            ex.entries.emplace_back(idx, val);
            prev_idx = idx;
        }
        data.dim = std::max(data.dim, prev_idx);
        raw_labels.insert(label);
        per_example_label.push_back(label);
        data.examples.push_back(std::move(ex));
    }

    // Normalize labels to {-1,+1}: keep native +-1, otherwise map the larger
    // of a two-label set ({0,1} or {1,2}) to +1 and the smaller to -1.
    bool native = true;
    for (long l : raw_labels)
        if (l != -1 && l != 1) native = false;
    if (!native) {
        bool zero_one = raw_labels == std::set<long>{0, 1} || raw_labels == std::set<long>{0} ||
                        raw_labels == std::set<long>{1};
        bool one_two = raw_labels == std::set<long>{1, 2} || raw_labels == std::set<long>{2};
        if (!zero_one && !one_two)
            throw ParseError(0, "unsupported label set (expected {-1,+1}, {0,1} or {1,2})");
        long hi = *raw_labels.rbegin();
        for (std::size_t i = 0; i < data.examples.size(); ++i)
            data.examples[i].label = per_example_label[i] == hi ? 1 : -1;
    } else {
        for (std::size_t i = 0; i < data.examples.size(); ++i)
            data.examples[i].label = static_cast<int>(per_example_label[i]);
    }
    return data;
}

Dataset load_libsvm_file(const std::string& path) {
    std::string text;
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        gzFile gz = gzopen(path.c_str(), "rb");
        if (!gz) throw std::runtime_error("cannot open dataset: " + path);
        char buf[1 << 16];
        int got;
        while ((got = gzread(gz, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(got));
        bool bad = got < 0;
        gzclose(gz);
        if (bad) throw std::runtime_error("gzip read error: " + path);
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open dataset: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return parse_libsvm(text);
}

std::string serialize_libsvm(const Dataset& data) {
    std::string out;
    char buf[64];
    for (const auto& ex : data.examples) {
        out += ex.label > 0 ? "+1" : "-1";
        for (const auto& [idx, val] : ex.entries) {
            std::snprintf(buf, sizeof buf, " %ld:%.17g", idx, val);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Dataset subsample(const Dataset& data, long n, std::uint64_t seed) {
    long size = static_cast<long>(data.examples.size());
    require(n >= 0 && n <= size, "subsample: n exceeds dataset size");
    Rng rng(seed);
    std::vector<long> idx(static_cast<std::size_t>(size));
    for (long i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    // Partial Fisher-Yates; the first n slots are the sample in draw order.
    for (long i = 0; i < n; ++i) {
        long j = i + static_cast<long>(rng.uniform_index(static_cast<std::uint64_t>(size - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    Dataset out;
    out.dim = data.dim;
    out.examples.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        out.examples.push_back(data.examples[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
    return out;
}

ProblemInstance to_problem(const Dataset& data, double mu, long dim_override) {
    long dim = data.dim;
    if (dim_override > 0) {
        require(dim_override >= data.dim, "to_problem: dim_override below max feature index");
        dim = dim_override;
    }
    require(dim >= 1, "to_problem: dataset has no features");
    std::vector<SvmExample> examples;
    examples.reserve(data.examples.size());
    for (const auto& ex : data.examples) {
        SvmExample e;
        e.label = ex.label;
        e.entries.reserve(ex.entries.size());
        for (const auto& [idx, val] : ex.entries)
            e.entries.emplace_back(static_cast<int>(idx - 1), val);  // to 0-based
        examples.push_back(std::move(e));
    }
    ProblemInstance p = ProblemInstance::svm_hinge(mu, dim, std::move(examples));
    return p;
}

}  // namespace dualavg
