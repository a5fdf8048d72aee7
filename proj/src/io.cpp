#include "f2cs/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace f2cs {

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

// Logical lines: comments ('#' to end of line) and blanks removed,
// original line numbers kept for error messages.
std::vector<std::pair<int, std::string>> logical_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = strip(line);
        if (!line.empty())
            out.emplace_back(no, line);
    }
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

int to_int(const std::string& origin, int line, const std::string& s) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size())
            fail(origin, line, "bad integer '" + s + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(origin, line, "bad integer '" + s + "'");
    }
}

std::vector<uint8_t> parse_bit_row(const std::string& origin, int line, const std::string& s) {
    std::vector<uint8_t> row;
    for (char c : s) {
        if (c == '0')
            row.push_back(0);
        else if (c == '1')
            row.push_back(1);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            fail(origin, line, "matrix rows are 0/1 strings");
    }
    return row;
}

NodeKind parse_kind(const std::string& origin, int line, const std::string& s) {
    if (s == "source")
        return NodeKind::source;
    if (s == "general")
        return NodeKind::general;
    if (s == "routing")
        return NodeKind::routing;
    if (s == "broadcast")
        return NodeKind::broadcast;
    if (s == "constant")
        return NodeKind::constant;
    if (s == "user")
        return NodeKind::user;
    fail(origin, line, "unknown node kind '" + s + "'");
}

NetworkSpec parse_network(const std::vector<std::pair<int, std::string>>& lines, size_t start,
                          const std::string& origin) {
    NetworkSpec spec;
    for (size_t i = start; i < lines.size(); ++i) {
        auto [no, line] = lines[i];
        auto tok = tokens(line);
        if (tok[0] == "omega") {
            if (tok.size() != 2)
                fail(origin, no, "usage: omega <count>");
            spec.omega = to_int(origin, no, tok[1]);
        } else if (tok[0] == "node") {
            if (tok.size() < 3)
                fail(origin, no, "usage: node <id> <kind> [source-class]");
            Node nd;
            nd.id = tok[1];
            nd.kind = parse_kind(origin, no, tok[2]);
            if (nd.kind == NodeKind::source && tok.size() >= 4)
                nd.source_class = parse_kind(origin, no, tok[3]);
            else if (nd.kind == NodeKind::source)
                nd.source_class = NodeKind::general;
            else if (tok.size() > 3)
                fail(origin, no, "only source nodes take a class");
            spec.nodes.push_back(std::move(nd));
        } else if (tok[0] == "matrix") {
            if (spec.nodes.empty())
                fail(origin, no, "matrix row before any node");
            if (tok.size() != 2)
                fail(origin, no, "usage: matrix <0/1 row>");
            spec.nodes.back().matrix.push_back(parse_bit_row(origin, no, tok[1]));
        } else if (tok[0] == "edge") {
            if (tok.size() != 3)
                fail(origin, no, "usage: edge <from> <to>");
            int a = spec.find_node(tok[1]);
            int b = spec.find_node(tok[2]);
            if (a < 0 || b < 0)
                fail(origin, no, "edge references undeclared node");
            spec.edges.emplace_back(a, b);
        } else {
            fail(origin, no, "unknown directive '" + tok[0] + "'");
        }
    }
    try {
        spec.finalize();
    } catch (const ParseError& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return spec;
}

LrcSpec parse_lrc(const std::vector<std::pair<int, std::string>>& lines, size_t start,
                  const std::string& origin) {
    LrcSpec lrc;
    for (size_t i = start; i < lines.size(); ++i) {
        auto [no, line] = lines[i];
        auto tok = tokens(line);
        if (tok[0] == "ell" && tok.size() == 2) {
            lrc.ell = to_int(origin, no, tok[1]);
        } else if (tok[0] == "eta" && tok.size() == 2) {
            lrc.eta = to_int(origin, no, tok[1]);
        } else if (tok[0] == "omega" && tok.size() == 2) {
            lrc.omega = to_int(origin, no, tok[1]);
        } else if (tok[0] == "surviving") {
            for (size_t j = 1; j < tok.size(); ++j)
                lrc.surviving.push_back(to_int(origin, no, tok[j]));
        } else if (tok[0] == "matrix" && tok.size() == 2) {
            lrc.source_matrix.push_back(parse_bit_row(origin, no, tok[1]));
        } else {
            fail(origin, no, "unknown directive '" + tok[0] + "'");
        }
    }
    try {
        lrc.validate();
    } catch (const ParseError& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return lrc;
}

PolySystem parse_system(const std::vector<std::pair<int, std::string>>& lines, size_t start,
                        const std::string& origin, int& v_out) {
    int n = -1, v = -1;
    std::vector<RankBlock> blocks;
    std::vector<BoolPoly> nonrank;
    enum class Section { none, block, nonrank } section = Section::none;

    for (size_t i = start; i < lines.size(); ++i) {
        auto [no, line] = lines[i];
        auto tok = tokens(line);
        if (tok[0] == "n" && tok.size() == 2) {
            n = to_int(origin, no, tok[1]);
        } else if (tok[0] == "v" && tok.size() == 2) {
            v = to_int(origin, no, tok[1]);
        } else if (line.front() == '[') {
            if (n < 0 || v < 0)
                fail(origin, no, "declare n and v before any section");
            if (line == "[nonrank]") {
                section = Section::nonrank;
            } else if (line.rfind("[rank-block", 0) == 0 && line.back() == ']') {
                if (v == 0)
                    fail(origin, no, "rank blocks need v >= 1");
                blocks.push_back(RankBlock{v, {}});
                section = Section::block;
            } else {
                fail(origin, no, "unknown section " + line);
            }
        } else {
            if (n < 0 || v < 0)
                fail(origin, no, "declare n and v before polynomials");
            BoolPoly p;
            try {
                p = BoolPoly::parse(line);
            } catch (const ParseError& e) {
                fail(origin, no, e.what());
            }
            if (section == Section::block) {
                if (p.leading_or_zero() > static_cast<VarId>(n + v))
                    fail(origin, no, "polynomial exceeds n+v variables");
                blocks.back().polys.push_back(std::move(p));
            } else if (section == Section::nonrank) {
                if (p.leading_or_zero() > static_cast<VarId>(n))
                    fail(origin, no, "plain constraints may only use x1..xn");
                nonrank.push_back(std::move(p));
            } else {
                fail(origin, no, "polynomial outside any section");
            }
        }
    }
    if (n < 0 || v < 0)
        throw ParseError(origin + ": system file must declare n and v");
    v_out = v;
    try {
        return PolySystem(n, std::move(blocks), std::move(nonrank));
    } catch (const DomainError& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

} // namespace

ParsedInput parse_input_text(const std::string& text, const std::string& origin) {
    auto lines = logical_lines(text);
    if (lines.empty())
        throw ParseError(origin + ": empty input");
    const std::string& tag = lines[0].second;
    ParsedInput out;
    if (tag == "network") {
        out.kind = InputKind::network;
        out.network = parse_network(lines, 1, origin);
    } else if (tag == "lrc") {
        out.kind = InputKind::lrc;
        out.lrc = parse_lrc(lines, 1, origin);
    } else if (tag == "system") {
        out.kind = InputKind::system;
        out.system = parse_system(lines, 1, origin, out.system_v);
    } else {
        throw ParseError(origin + ":" + std::to_string(lines[0].first) +
                         ": expected tag line 'network', 'lrc' or 'system'");
    }
    return out;
}

ParsedInput parse_input_file(const std::string& path) {
    return parse_input_text(read_file(path), path);
}

std::vector<uint8_t> parse_assignment_text(const std::string& text, int n) {
    auto lines = logical_lines(text);
    if (lines.empty())
        throw ParseError("empty assignment");
    std::vector<uint8_t> out(static_cast<size_t>(n), 0);
    auto [no, line] = lines[0];
    auto tok = tokens(line);
    if (tok[0] == "ones") {
        for (size_t i = 1; i < tok.size(); ++i) {
            int idx = to_int("<assignment>", no, tok[i]);
            if (idx < 1 || idx > n)
                throw ParseError("assignment index x" + std::to_string(idx) + " outside 1.." +
                                 std::to_string(n));
            out[static_cast<size_t>(idx - 1)] = 1;
        }
        return out;
    }
    std::string bits;
    for (const auto& [lno, l] : lines)
        for (char c : l)
            if (!std::isspace(static_cast<unsigned char>(c)))
                bits += c;
    if (static_cast<int>(bits.size()) != n)
        throw ParseError("assignment has " + std::to_string(bits.size()) + " bits, expected " +
                         std::to_string(n));
    for (int i = 0; i < n; ++i) {
        if (bits[static_cast<size_t>(i)] == '1')
            out[static_cast<size_t>(i)] = 1;
        else if (bits[static_cast<size_t>(i)] != '0')
            throw ParseError("assignment must be a 0/1 string or an 'ones' list");
    }
    return out;
}

std::vector<uint8_t> parse_assignment_file(const std::string& path, int n) {
    return parse_assignment_text(read_file(path), n);
}

std::string charsets_text(const std::vector<CharSet>& charsets) {
    std::string out;
    for (size_t k = 0; k < charsets.size(); ++k) {
        if (k > 0)
            out += "----\n";
        out += "charset k=" + std::to_string(k) + " df=" + std::to_string(charsets[k].df()) + "\n";
        out += charsets[k].text();
    }
    return out;
}

std::vector<CharSet> parse_charsets_text(const std::string& text, int n) {
    std::vector<CharSet> out;
    std::vector<BoolPoly> current;
    bool in_block = false;
    auto flush = [&] {
        if (!in_block)
            return;
        out.push_back(CharSet::from_polys(current, n, n));
        current.clear();
        in_block = false;
    };
    for (const auto& [no, line] : logical_lines(text)) {
        if (line.rfind("charset", 0) == 0) {
            flush();
            in_block = true;
        } else if (line == "----") {
            flush();
        } else {
            if (!in_block)
                throw ParseError("equation before any charset header");
            current.push_back(BoolPoly::parse(line));
        }
    }
    flush();
    return out;
}

std::vector<CharSet> parse_charsets_file(const std::string& path, int n) {
    return parse_charsets_text(read_file(path), n);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace f2cs
