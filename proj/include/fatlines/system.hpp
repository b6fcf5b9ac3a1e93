#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatlines {

/// L_d(m_1,...,m_s): the degree-d forms on P^3 vanishing to order m_i along
/// the i-th of s general lines. Multiplicities are kept sorted descending.
class FatFlatSystem {
  public:
    FatFlatSystem(unsigned degree, std::vector<unsigned> mults)
        : degree_(degree), mults_(std::move(mults)) {
        for (unsigned m : mults_) {
            if (m == 0) {
                throw std::invalid_argument(
                    "FatFlatSystem: multiplicities must be >= 1");
            }
        }
        std::sort(mults_.begin(), mults_.end(), std::greater<unsigned>());
        if (!mults_.empty() && degree_ < mults_.front()) {
            throw std::invalid_argument(
                "FatFlatSystem: degree below the largest multiplicity");
        }
    }

    unsigned degree() const { return degree_; }
    const std::vector<unsigned>& mults() const { return mults_; }
    std::size_t line_count() const { return mults_.size(); }

    bool operator==(const FatFlatSystem& o) const {
        return degree_ == o.degree_ && mults_ == o.mults_;
    }

  private:
    unsigned degree_;
    std::vector<unsigned> mults_;
};

/// Compressed multiplicity notation: {3,3,3,3,3,3,2} -> "3^6,2".
inline std::string format_mults(const std::vector<unsigned>& mults) {
    std::string out;
    std::size_t i = 0;
    while (i < mults.size()) {
        std::size_t j = i;
        while (j < mults.size() && mults[j] == mults[i]) ++j;
        if (!out.empty()) out += ',';
        out += std::to_string(mults[i]);
        if (j - i > 1) out += '^' + std::to_string(j - i);
        i = j;
    }
    return out;
}

/// Parses "3^6,2" or "3,3,2"; empty string means no lines.
inline std::vector<unsigned> parse_mults(const std::string& text) {
    std::vector<unsigned> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        const std::size_t caret = item.find('^');
        const std::string value_part =
            caret == std::string::npos ? item : item.substr(0, caret);
        const std::string count_part =
            caret == std::string::npos ? "1" : item.substr(caret + 1);
        std::size_t used = 0;
        unsigned long value = 0, count = 0;
        try {
            value = std::stoul(value_part, &used);
            if (used != value_part.size()) throw std::invalid_argument(item);
            count = std::stoul(count_part, &used);
            if (used != count_part.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_mults: bad multiplicity item '" +
                                        item + "'");
        }
        for (unsigned long k = 0; k < count; ++k) {
            out.push_back(static_cast<unsigned>(value));
        }
        pos = next + 1;
    }
    return out;
}

inline std::string system_label(const FatFlatSystem& sys) {
    return "L" + std::to_string(sys.degree()) + "(" + format_mults(sys.mults()) +
           ")";
}

/// Canonical key fragment used for caching and report identity.
inline std::string canonical_system_string(const FatFlatSystem& sys) {
    std::string out = "d=" + std::to_string(sys.degree()) + ";m=";
    for (std::size_t i = 0; i < sys.mults().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sys.mults()[i]);
    }
    return out;
}

}  // namespace fatlines
