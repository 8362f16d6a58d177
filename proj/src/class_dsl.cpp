#include "ramsey/class_dsl.hpp"

#include "ramsey/error.hpp"

#include <cctype>
#include <charconv>

namespace ramsey {

namespace {

class SpecParser
{
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    ClassSpec parse()
    {
        auto spec = expression();
        skip_space();
        if (pos_ != text_.size())
            throw SyntaxError("trailing input '" + std::string(text_.substr(pos_)) + "'", pos_);
        return spec;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    void expect(char c)
    {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string word()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_valid_symbol_name(text_.substr(pos_, 1)))
            ++pos_;
        if (start == pos_)
            throw SyntaxError(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                  : std::string("unexpected end of class spec"),
                              pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string quoted()
    {
        expect('"');
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"')
            ++pos_;
        if (pos_ >= text_.size())
            throw SyntaxError("unterminated string", start);
        std::string out(text_.substr(start, pos_ - start));
        ++pos_;
        return out;
    }

    std::size_t number()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (start == pos_ || ec != std::errc())
            throw SyntaxError("expected a number", start);
        return v;
    }

    ClassSpec expression()
    {
        skip_space();
        std::size_t at = pos_;
        auto head = word();
        if (head == "LO")
            return ClassSpec::linear_order();
        if (head == "G")
            return ClassSpec::graph();
        if (head == "T")
            return ClassSpec::tournament();
        if (head == "PLE")
            return ClassSpec::poset_linear_extension();
        if (head == "perm")
            return ClassSpec::permutations();
        if (head == "F") {
            expect('(');
            auto n = number();
            expect(')');
            return ClassSpec::clique_free(n);
        }
        if (head == "wedge") {
            expect('(');
            auto left = expression();
            expect(',');
            auto right = expression();
            expect(')');
            return wedge(left, right);
        }
        if (head == "rename") {
            expect('(');
            auto inner = expression();
            expect(',');
            auto prefix = quoted();
            expect(')');
            return rename_symbols(inner, prefix);
        }
        if (head == "forget") {
            expect('(');
            auto inner = expression();
            expect(',');
            expect('{');
            std::set<std::string> dropped;
            if (!accept('}')) {
                do
                    dropped.insert(word());
                while (accept(','));
                expect('}');
            }
            expect(')');
            return forget(inner, dropped);
        }
        throw SyntaxError("unknown class '" + head + "'", at);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ClassSpec parse_class_spec(std::string_view text)
{
    return SpecParser(text).parse();
}

} // namespace ramsey
