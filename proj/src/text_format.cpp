#include "ramsey/text_format.hpp"

#include "ramsey/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ramsey {

namespace {

std::string_view trim(std::string_view s)
{
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::vector<std::string_view> words(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string & msg)
{
    throw FormatError("line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_number(std::string_view s, std::size_t line, std::string_view what)
{
    s = trim(s);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        fail(line, "expected a non-negative integer for " + std::string(what) + ", got '" + std::string(s) + "'");
    return v;
}

Signature parse_signature(std::string_view body, std::size_t line)
{
    std::vector<Symbol> symbols;
    body = trim(body);
    if (body.empty())
        return Signature();
    for (auto item : split(body, ',')) {
        item = trim(item);
        auto slash = item.rfind('/');
        if (slash == std::string_view::npos)
            fail(line, "expected NAME/ARITY, got '" + std::string(item) + "'");
        std::string name(trim(item.substr(0, slash)));
        if (!is_valid_symbol_name(name))
            fail(line, "invalid symbol name '" + name + "'");
        std::size_t arity = parse_number(item.substr(slash + 1), line, "arity");
        if (arity < 1)
            fail(line, "symbol '" + name + "' must have arity >= 1");
        for (const auto & s : symbols)
            if (s.name == name)
                fail(line, "duplicate symbol '" + name + "'");
        symbols.push_back({std::move(name), arity});
    }
    return Signature(std::move(symbols));
}

} // namespace

Structure parse_structure(std::string_view text)
{
    std::optional<Signature> signature;
    std::optional<std::size_t> size;
    std::map<std::string, std::vector<Tuple>> bodies;

    auto lines = split(text, '\n');
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        auto line = trim(lines[ln]);
        if (line.empty() || line.front() == '#')
            continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos)
            fail(line_no, "expected 'key: value', got '" + std::string(line) + "'");
        std::string key(trim(line.substr(0, colon)));
        auto body = line.substr(colon + 1);

        // Directive keys only count once, so symbols may be called "size".
        if (key == "signature" && !signature) {
            signature = parse_signature(body, line_no);
            continue;
        }
        if (key == "size" && !size) {
            size = parse_number(body, line_no, "size");
            continue;
        }
        if (!signature || !size)
            fail(line_no, "relation line before signature and size");
        auto idx = signature->index_of(key);
        if (!idx)
            fail(line_no, "symbol '" + key + "' is not in the signature");
        if (bodies.count(key))
            fail(line_no, "repeated body for symbol '" + key + "'");
        const std::size_t arity = (*signature)[*idx].arity;
        std::vector<Tuple> tuples;
        if (!trim(body).empty()) {
            for (auto item : split(body, ';')) {
                auto entries = words(item);
                if (entries.size() != arity)
                    fail(line_no, "tuple '" + std::string(trim(item)) + "' has " + std::to_string(entries.size()) +
                                      " entries, symbol '" + key + "' has arity " + std::to_string(arity));
                Tuple t;
                for (auto e : entries) {
                    auto v = parse_number(e, line_no, "tuple entry");
                    if (v >= *size)
                        fail(line_no, "entry " + std::to_string(v) + " out of range for size " +
                                          std::to_string(*size));
                    t.push_back(static_cast<Element>(v));
                }
                if (std::find(tuples.begin(), tuples.end(), t) != tuples.end())
                    fail(line_no, "duplicate tuple '" + std::string(trim(item)) + "' for symbol '" + key + "'");
                tuples.push_back(std::move(t));
            }
        }
        bodies.emplace(std::move(key), std::move(tuples));
    }
    if (!signature)
        throw FormatError("missing signature line");
    if (!size)
        throw FormatError("missing size line");
    return Structure::from_named(std::move(*signature), *size, bodies);
}

std::string render_structure(const Structure & a)
{
    std::ostringstream out;
    out << "signature:" << (a.signature().empty() ? "" : " ") << a.signature().to_string() << '\n';
    out << "size: " << a.size() << '\n';
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
        const auto & rel = a.relation(s);
        if (rel.empty())
            continue;
        out << a.signature()[s].name << ':';
        bool first = true;
        for (const auto & t : rel.tuples()) {
            out << (first ? " " : "; ");
            first = false;
            for (std::size_t i = 0; i < t.size(); ++i)
                out << (i ? " " : "") << t[i];
        }
        out << '\n';
    }
    return out.str();
}

std::vector<Structure> parse_structures(std::string_view text)
{
    std::vector<Structure> out;
    std::string chunk;
    auto flush = [&] {
        bool blank = true;
        for (auto line : split(chunk, '\n')) {
            line = trim(line);
            blank = blank && (line.empty() || line.front() == '#');
        }
        if (!blank)
            out.push_back(parse_structure(chunk));
        chunk.clear();
    };
    for (auto line : split(text, '\n')) {
        if (trim(line) == "---")
            flush();
        else {
            chunk.append(line);
            chunk.push_back('\n');
        }
    }
    flush();
    return out;
}

std::string read_text_file(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Structure read_structure_file(const std::filesystem::path & path)
{
    try {
        return parse_structure(read_text_file(path));
    } catch (const FormatError & e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<Element> parse_map(std::string_view text, std::size_t source_size)
{
    std::vector<std::optional<Element>> map(source_size);
    auto lines = split(text, '\n');
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        auto line = trim(lines[ln]);
        if (line.empty() || line.front() == '#')
            continue;
        auto arrow = line.find("->");
        if (arrow == std::string_view::npos)
            fail(ln + 1, "expected 'i -> j', got '" + std::string(line) + "'");
        auto from = parse_number(line.substr(0, arrow), ln + 1, "source element");
        auto to = parse_number(line.substr(arrow + 2), ln + 1, "target element");
        if (from >= source_size)
            fail(ln + 1, "source element " + std::to_string(from) + " out of range for size " +
                             std::to_string(source_size));
        if (map[from])
            fail(ln + 1, "source element " + std::to_string(from) + " mapped twice");
        map[from] = static_cast<Element>(to);
    }
    std::vector<Element> out;
    for (std::size_t i = 0; i < source_size; ++i) {
        if (!map[i])
            throw FormatError("no line for source element " + std::to_string(i));
        out.push_back(*map[i]);
    }
    return out;
}

std::string render_map(std::span<const Element> map)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < map.size(); ++i)
        out << i << " -> " << map[i] << '\n';
    return out.str();
}

std::vector<Element> read_map_file(const std::filesystem::path & path, std::size_t source_size)
{
    try {
        return parse_map(read_text_file(path), source_size);
    } catch (const FormatError & e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace ramsey
