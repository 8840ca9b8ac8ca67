#ifndef FLOPGW_INSERTION_TEXT_HPP
#define FLOPGW_INSERTION_TEXT_HPP

#include <string>
#include <vector>

#include "flopgw/qlocal.hpp"

namespace flopgw {

// Syntax error with position information for the insertion grammar.
struct InsertionParseError : std::runtime_error {
    size_t position;
    InsertionParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos)
    {
    }
};

// Grammar: optional "tau_<k>", then a product of "h^<a>" and "xi^<b>"
// separated by '*' or whitespace; bare "h"/"xi" means exponent 1; "1" is the
// fundamental class.  Exponents beyond the basis range are normalized with a
// warning on the provided stream (pass nullptr to silence).
Insertion parse_insertion(const std::string& text, const Ring& ring, std::string* warning = nullptr);

// Comma-separated list of insertions.
std::vector<Insertion> parse_insertion_list(const std::string& text, const Ring& ring,
                                            std::string* warning = nullptr);

std::string insertion_to_string(const Insertion& ins);

} // namespace flopgw

#endif
