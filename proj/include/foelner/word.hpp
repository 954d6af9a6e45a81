#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace foelner {

struct GroupDescriptor {
    enum class Kind { Free, FreeAbelian };

    Kind kind = Kind::Free;
    int rank = 1;

    static GroupDescriptor free(int rank);
    static GroupDescriptor abelian(int rank);

    // "free:2" or "abelian:2"
    static GroupDescriptor parse(std::string_view text);
    std::string to_string() const;

    bool is_free() const noexcept { return kind == Kind::Free; }

    friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

struct Letter {
    int generator = 1;  // 1-based
    int sign = 1;       // +1 or -1

    Letter inverse() const { return {generator, -sign}; }

    friend bool operator==(const Letter&, const Letter&) = default;
};

// Element of a marked group, always stored in normal form: a freely reduced
// letter sequence for free groups, an exponent vector for free abelian groups.
class Word {
public:
    explicit Word(GroupDescriptor descriptor);

    static Word from_letters(GroupDescriptor descriptor, std::span<const Letter> letters);
    static Word from_exponents(GroupDescriptor descriptor, std::vector<int> exponents);
    static Word generator(GroupDescriptor descriptor, int index, int sign = 1);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }

    // Word length: letter count, or l1 norm of the exponent vector.
    std::size_t length() const noexcept { return length_; }
    bool is_identity() const noexcept { return length_ == 0; }

    std::vector<Letter> letters() const;
    const std::vector<int>& exponents() const;

    // Free groups: signed generator codes (+i for a_i, -i for a_i^-1).
    const std::vector<int>& codes() const noexcept { return data_; }

    Word inverse() const;

    std::string to_string() const;

    friend bool operator==(const Word& lhs, const Word& rhs) {
        return lhs.descriptor_ == rhs.descriptor_ && lhs.data_ == rhs.data_;
    }

private:
    Word(GroupDescriptor descriptor, std::vector<int> data);

    GroupDescriptor descriptor_;
    std::vector<int> data_;
    std::size_t length_ = 0;

    friend Word reduce(GroupDescriptor descriptor, std::span<const Letter> letters);
    friend Word multiply(const Word& u, const Word& v);
    friend bool shortlex_less(const Word& lhs, const Word& rhs);
    friend struct WordHash;
    friend class Ball;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

// Freely reduce a raw letter sequence.
Word reduce(GroupDescriptor descriptor, std::span<const Letter> letters);

Word multiply(const Word& u, const Word& v);

// Shortlex order with a1 < A1 < a2 < A2 < ... ; free abelian words compare by
// l1 length, then lexicographically on the exponent vector.
bool shortlex_less(const Word& lhs, const Word& rhs);

struct ShortlexLess {
    bool operator()(const Word& lhs, const Word& rhs) const { return shortlex_less(lhs, rhs); }
};

// True iff the reduced word starts with `letter`. Free groups only.
bool begins_with(const Word& w, Letter letter);

// Parse `e`, `a1.A2.a1` (free) or `(2,-1)` (free abelian).
Word parse_word(GroupDescriptor descriptor, std::string_view text);

// Standard generators a_1..a_n as words.
std::vector<Word> standard_generators(GroupDescriptor descriptor);

// Comma-separated words for the CLI: `a1,a2`, `a1.a2,A1` or `(1,0),(0,1)`.
std::vector<Word> parse_generator_list(GroupDescriptor descriptor, std::string_view text);

class Ball {
public:
    Ball(GroupDescriptor descriptor, int radius);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }
    int radius() const noexcept { return radius_; }
    const std::vector<Word>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }

    std::optional<std::size_t> index_of(const Word& w) const;
    bool contains(const Word& w) const { return index_.count(w) != 0; }

private:
    GroupDescriptor descriptor_;
    int radius_;
    std::vector<Word> elements_;
    std::unordered_map<Word, std::size_t, WordHash> index_;
};

inline Ball ball(GroupDescriptor descriptor, int radius) { return Ball(descriptor, radius); }

// 1 + 2n((2n-1)^r - 1)/(2n-2) for free groups of rank n >= 2.
long long free_ball_size(int rank, int radius);
long long free_sphere_size(int rank, int radius);

}  // namespace foelner
