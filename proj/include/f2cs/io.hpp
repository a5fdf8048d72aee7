#ifndef F2CS_IO_HPP
#define F2CS_IO_HPP

#include <string>
#include <vector>

#include "f2cs/bcsfr.hpp"
#include "f2cs/coding.hpp"
#include "f2cs/polysystem.hpp"

namespace f2cs {

enum class InputKind { network, lrc, system };

// One parsed instance file. The tag line of the file ("network", "lrc" or
// "system") decides which member is meaningful.
struct ParsedInput {
    InputKind kind;
    NetworkSpec network;
    LrcSpec lrc;
    PolySystem system;
    int system_v = 0; // kernel width declared by a raw system file
};

ParsedInput parse_input_text(const std::string& text, const std::string& origin = "<input>");
ParsedInput parse_input_file(const std::string& path);

// Assignment file: either a 0/1 string of length n, or "ones i j k ..."
// listing the variables set to 1.
std::vector<uint8_t> parse_assignment_text(const std::string& text, int n);
std::vector<uint8_t> parse_assignment_file(const std::string& path, int n);

// Charset collection text: per charset a header "charset k=<i> df=<df>",
// one equation per line, blocks separated by "----".
std::string charsets_text(const std::vector<CharSet>& charsets);
std::vector<CharSet> parse_charsets_text(const std::string& text, int n);
std::vector<CharSet> parse_charsets_file(const std::string& path, int n);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace f2cs

#endif
