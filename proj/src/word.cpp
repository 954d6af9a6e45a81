#include "foelner/word.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "foelner/errors.hpp"

namespace foelner {

namespace {

int letter_key(int code) { return 2 * (std::abs(code) - 1) + (code < 0 ? 1 : 0); }

void require_same(const GroupDescriptor& a, const GroupDescriptor& b) {
    if (!(a == b)) {
        throw PreconditionError("descriptor mismatch: " + a.to_string() + " vs " + b.to_string());
    }
}

int parse_int(std::string_view s, std::string_view context) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw PreconditionError("cannot parse integer in '" + std::string(context) + "'");
    }
    return value;
}

}  // namespace

GroupDescriptor GroupDescriptor::free(int rank) {
    if (rank < 1) throw PreconditionError("group rank must be >= 1");
    return {Kind::Free, rank};
}

GroupDescriptor GroupDescriptor::abelian(int rank) {
    if (rank < 1) throw PreconditionError("group rank must be >= 1");
    return {Kind::FreeAbelian, rank};
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw PreconditionError("group spec must look like free:N or abelian:N, got '" +
                                std::string(text) + "'");
    }
    auto kind = text.substr(0, colon);
    int rank = parse_int(text.substr(colon + 1), text);
    if (kind == "free") return free(rank);
    if (kind == "abelian") return abelian(rank);
    throw PreconditionError("unknown group kind '" + std::string(kind) + "'");
}

std::string GroupDescriptor::to_string() const {
    return (kind == Kind::Free ? "free:" : "abelian:") + std::to_string(rank);
}

Word::Word(GroupDescriptor descriptor) : descriptor_(descriptor) {
    if (!descriptor_.is_free()) data_.assign(static_cast<std::size_t>(descriptor_.rank), 0);
}

Word::Word(GroupDescriptor descriptor, std::vector<int> data)
    : descriptor_(descriptor), data_(std::move(data)) {
    if (descriptor_.is_free()) {
        length_ = data_.size();
    } else {
        length_ = 0;
        for (int x : data_) length_ += static_cast<std::size_t>(std::abs(x));
    }
}

Word Word::from_letters(GroupDescriptor descriptor, std::span<const Letter> letters) {
    return reduce(descriptor, letters);
}

Word Word::from_exponents(GroupDescriptor descriptor, std::vector<int> exponents) {
    if (descriptor.is_free()) throw PreconditionError("exponent vectors need a free abelian group");
    if (exponents.size() != static_cast<std::size_t>(descriptor.rank)) {
        throw PreconditionError("exponent vector length does not match rank " +
                                std::to_string(descriptor.rank));
    }
    return Word(descriptor, std::move(exponents));
}

Word Word::generator(GroupDescriptor descriptor, int index, int sign) {
    if (index < 1 || index > descriptor.rank) {
        throw PreconditionError("generator index " + std::to_string(index) + " out of range 1.." +
                                std::to_string(descriptor.rank));
    }
    if (sign != 1 && sign != -1) throw PreconditionError("letter sign must be +1 or -1");
    if (descriptor.is_free()) return Word(descriptor, {sign * index});
    std::vector<int> e(static_cast<std::size_t>(descriptor.rank), 0);
    e[static_cast<std::size_t>(index - 1)] = sign;
    return Word(descriptor, std::move(e));
}

std::vector<Letter> Word::letters() const {
    if (!descriptor_.is_free()) throw PreconditionError("letters() needs a free group word");
    std::vector<Letter> out;
    out.reserve(data_.size());
    for (int c : data_) out.push_back({std::abs(c), c > 0 ? 1 : -1});
    return out;
}

const std::vector<int>& Word::exponents() const {
    if (descriptor_.is_free()) throw PreconditionError("exponents() needs a free abelian word");
    return data_;
}

Word Word::inverse() const {
    if (descriptor_.is_free()) {
        std::vector<int> inv(data_.rbegin(), data_.rend());
        for (int& c : inv) c = -c;
        return Word(descriptor_, std::move(inv));
    }
    std::vector<int> inv = data_;
    for (int& x : inv) x = -x;
    return Word(descriptor_, std::move(inv));
}

std::string Word::to_string() const {
    if (!descriptor_.is_free()) {
        std::string s = "(";
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(data_[i]);
        }
        return s + ")";
    }
    if (data_.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (i) s += '.';
        s += data_[i] > 0 ? 'a' : 'A';
        s += std::to_string(std::abs(data_[i]));
    }
    return s;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = w.descriptor_.is_free() ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL;
    for (int c : w.data_) {
        h ^= std::hash<int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Word reduce(GroupDescriptor descriptor, std::span<const Letter> letters) {
    std::vector<int> stack;
    std::vector<int> exps;
    if (!descriptor.is_free()) exps.assign(static_cast<std::size_t>(descriptor.rank), 0);
    for (const Letter& l : letters) {
        if (l.generator < 1 || l.generator > descriptor.rank) {
            throw PreconditionError("generator index " + std::to_string(l.generator) +
                                    " out of range 1.." + std::to_string(descriptor.rank));
        }
        if (l.sign != 1 && l.sign != -1) throw PreconditionError("letter sign must be +1 or -1");
        if (!descriptor.is_free()) {
            exps[static_cast<std::size_t>(l.generator - 1)] += l.sign;
            continue;
        }
        int code = l.sign * l.generator;
        if (!stack.empty() && stack.back() == -code) {
            stack.pop_back();
        } else {
            stack.push_back(code);
        }
    }
    if (descriptor.is_free()) return Word(descriptor, std::move(stack));
    return Word::from_exponents(descriptor, std::move(exps));
}

Word multiply(const Word& u, const Word& v) {
    require_same(u.descriptor_, v.descriptor_);
    if (!u.descriptor_.is_free()) {
        std::vector<int> sum = u.data_;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v.data_[i];
        return Word(u.descriptor_, std::move(sum));
    }
    // Cancel the longest suffix of u that is inverse to a prefix of v.
    std::size_t cancel = 0;
    const std::size_t nu = u.data_.size();
    while (cancel < nu && cancel < v.data_.size() &&
           u.data_[nu - 1 - cancel] == -v.data_[cancel]) {
        ++cancel;
    }
    std::vector<int> out;
    out.reserve(nu - cancel + v.data_.size() - cancel);
    out.insert(out.end(), u.data_.begin(), u.data_.end() - static_cast<std::ptrdiff_t>(cancel));
    out.insert(out.end(), v.data_.begin() + static_cast<std::ptrdiff_t>(cancel), v.data_.end());
    return Word(u.descriptor_, std::move(out));
}

bool shortlex_less(const Word& lhs, const Word& rhs) {
    require_same(lhs.descriptor_, rhs.descriptor_);
    if (lhs.length_ != rhs.length_) return lhs.length_ < rhs.length_;
    if (!lhs.descriptor_.is_free()) return lhs.data_ < rhs.data_;
    for (std::size_t i = 0; i < lhs.data_.size(); ++i) {
        int a = letter_key(lhs.data_[i]);
        int b = letter_key(rhs.data_[i]);
        if (a != b) return a < b;
    }
    return false;
}

bool begins_with(const Word& w, Letter letter) {
    if (!w.descriptor().is_free()) throw PreconditionError("begins_with needs a free group word");
    if (w.is_identity()) return false;
    return w.codes().front() == letter.sign * letter.generator;
}

Word parse_word(GroupDescriptor descriptor, std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "e") return Word(descriptor);
    if (!descriptor.is_free()) {
        if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
            throw PreconditionError("free abelian element must look like (x,y,...), got '" +
                                    std::string(text) + "'");
        }
        auto body = text.substr(1, text.size() - 2);
        std::vector<int> exps;
        while (true) {
            auto comma = body.find(',');
            exps.push_back(parse_int(body.substr(0, comma), text));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        return Word::from_exponents(descriptor, std::move(exps));
    }
    std::vector<Letter> letters;
    while (!text.empty()) {
        auto dot = text.find('.');
        auto tok = text.substr(0, dot);
        if (tok.size() < 2 || (tok.front() != 'a' && tok.front() != 'A')) {
            throw PreconditionError("bad letter '" + std::string(tok) + "'");
        }
        letters.push_back({parse_int(tok.substr(1), tok), tok.front() == 'a' ? 1 : -1});
        if (dot == std::string_view::npos) break;
        text.remove_prefix(dot + 1);
    }
    return reduce(descriptor, letters);
}

std::vector<Word> standard_generators(GroupDescriptor descriptor) {
    std::vector<Word> gens;
    for (int i = 1; i <= descriptor.rank; ++i) gens.push_back(Word::generator(descriptor, i));
    return gens;
}

std::vector<Word> parse_generator_list(GroupDescriptor descriptor, std::string_view text) {
    std::vector<Word> gens;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size()) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            if (text[i] != ',' || depth != 0) continue;
        }
        const auto tok = text.substr(start, i - start);
        if (tok.empty()) throw PreconditionError("empty generator in '" + std::string(text) + "'");
        Word w = parse_word(descriptor, tok);
        if (w.is_identity()) throw PreconditionError("generator '" + std::string(tok) + "' is the identity");
        gens.push_back(std::move(w));
        start = i + 1;
    }
    return gens;
}

Ball::Ball(GroupDescriptor descriptor, int radius) : descriptor_(descriptor), radius_(radius) {
    if (radius < 0) throw PreconditionError("ball radius must be >= 0");
    if (descriptor.rank < 1) throw PreconditionError("group rank must be >= 1");
    if (descriptor.is_free()) {
        // Appending letters in key order to a shortlex-sorted layer keeps the
        // next layer sorted.
        std::vector<int> order;
        for (int g = 1; g <= descriptor.rank; ++g) {
            order.push_back(g);
            order.push_back(-g);
        }
        elements_.push_back(Word(descriptor));
        std::size_t layer_begin = 0;
        for (int r = 1; r <= radius; ++r) {
            std::size_t layer_end = elements_.size();
            for (std::size_t i = layer_begin; i < layer_end; ++i) {
                for (int c : order) {
                    const auto& d = elements_[i].data_;
                    if (!d.empty() && d.back() == -c) continue;
                    std::vector<int> next = d;
                    next.push_back(c);
                    elements_.push_back(Word(descriptor, std::move(next)));
                }
            }
            layer_begin = layer_end;
        }
    } else {
        const auto rank = static_cast<std::size_t>(descriptor.rank);
        std::vector<int> cur(rank, -radius);
        while (true) {
            int l1 = 0;
            for (int x : cur) l1 += std::abs(x);
            if (l1 <= radius) elements_.push_back(Word(descriptor, cur));
            std::size_t i = rank;
            while (i > 0 && cur[i - 1] == radius) {
                cur[i - 1] = -radius;
                --i;
            }
            if (i == 0) break;
            ++cur[i - 1];
        }
        std::stable_sort(elements_.begin(), elements_.end(), ShortlexLess{});
    }
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::optional<std::size_t> Ball::index_of(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

long long free_sphere_size(int rank, int radius) {
    if (radius == 0) return 1;
    long long s = 2LL * rank;
    for (int i = 1; i < radius; ++i) s *= (2LL * rank - 1);
    return s;
}

long long free_ball_size(int rank, int radius) {
    long long total = 0;
    for (int r = 0; r <= radius; ++r) total += free_sphere_size(rank, r);
    return total;
}

}  // namespace foelner
