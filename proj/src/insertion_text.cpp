#include "flopgw/insertion_text.hpp"

#include <cctype>
#include <sstream>

namespace flopgw {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*'))
            ++pos;
    }
    bool done() const { return pos >= s.size(); }
    bool starts_with(const std::string& w) const { return s.compare(pos, w.size(), w) == 0; }

    long read_uint()
    {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw InsertionParseError("expected a non-negative integer", pos);
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
            if (v > 1000000)
                throw InsertionParseError("integer out of range", pos);
        }
        return v;
    }
};

} // namespace

Insertion parse_insertion(const std::string& text, const Ring& ring, std::string* warning)
{
    Cursor c{text};
    Insertion out;
    out.k = 0;
    c.skip_ws();
    if (c.starts_with("tau_")) {
        c.pos += 4;
        out.k = static_cast<int>(c.read_uint());
        c.skip_ws();
    }
    long eh = 0, exi = 0;
    bool saw_factor = false;
    while (true) {
        c.skip_ws();
        if (c.done())
            break;
        if (c.starts_with("xi")) {
            c.pos += 2;
            long e = 1;
            if (!c.done() && c.s[c.pos] == '^') {
                ++c.pos;
                e = c.read_uint();
            }
            exi += e;
            saw_factor = true;
        } else if (c.starts_with("h")) {
            c.pos += 1;
            long e = 1;
            if (!c.done() && c.s[c.pos] == '^') {
                ++c.pos;
                e = c.read_uint();
            }
            eh += e;
            saw_factor = true;
        } else if (c.s[c.pos] == '1') {
            ++c.pos;
            saw_factor = true;
        } else {
            throw InsertionParseError("unknown generator for the model", c.pos);
        }
    }
    if (!saw_factor)
        throw InsertionParseError("empty insertion", c.pos);
    const ModelSpec& spec = ring.spec();
    if (eh > spec.r || exi > spec.rprime + 1) {
        if (warning) {
            std::ostringstream os;
            os << "insertion '" << text << "': exponent exceeds the basis range; normalizing";
            *warning = os.str();
        }
    }
    out.cls = ring.monomial(static_cast<int>(eh), static_cast<int>(exi));
    return out;
}

std::vector<Insertion> parse_insertion_list(const std::string& text, const Ring& ring,
                                            std::string* warning)
{
    std::vector<Insertion> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        const std::string piece =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty() || comma != std::string::npos) {
            std::string w;
            out.push_back(parse_insertion(piece, ring, warning ? &w : nullptr));
            if (warning && !w.empty()) {
                if (!warning->empty())
                    *warning += "; ";
                *warning += w;
            }
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (out.empty())
        throw InsertionParseError("empty insertion list", 0);
    return out;
}

std::string insertion_to_string(const Insertion& ins)
{
    std::ostringstream os;
    if (ins.k > 0)
        os << "tau_" << ins.k << " ";
    os << ins.cls.to_string();
    return os.str();
}

} // namespace flopgw
