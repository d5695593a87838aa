#ifndef SKBFORGE_TEXT_H_
#define SKBFORGE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace skbforge::text {

// Lower-cases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
// Other code points pass through unchanged. Invalid UTF-8 bytes are kept.
std::string fold_case(std::string_view s);

std::string_view trim(std::string_view s);

bool is_space(char c);

// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_ws(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

}  // namespace skbforge::text

#endif  // SKBFORGE_TEXT_H_
