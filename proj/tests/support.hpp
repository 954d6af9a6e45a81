#pragma once

#include <string_view>

#include "foelner/word.hpp"

namespace foelner::testing {

inline const GroupDescriptor kF2 = GroupDescriptor::free(2);
inline const GroupDescriptor kZ1 = GroupDescriptor::abelian(1);
inline const GroupDescriptor kZ2 = GroupDescriptor::abelian(2);

inline Word w2(std::string_view text) { return parse_word(kF2, text); }

}  // namespace foelner::testing
