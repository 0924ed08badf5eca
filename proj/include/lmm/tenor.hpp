#ifndef LMM_TENOR_HPP
#define LMM_TENOR_HPP

#include <vector>

namespace lmm {

// Tenor grid T_0 < T_1 < ... < T_M with accrual year fractions tau_1..tau_M.
// Rate n (1-based, as everywhere in this library) spans [T_{n-1}, T_n] and
// fixes at T_{n-1}.
class TenorStructure {
  public:
    // year_fractions empty => tau_n = T_n - T_{n-1}.
    explicit TenorStructure(std::vector<double> dates,
                            std::vector<double> year_fractions = {});

    int size() const { return static_cast<int>(dates_.size()) - 1; } // M
    double date(int i) const { return dates_[static_cast<std::size_t>(i)]; } // T_i, i in 0..M
    double year_fraction(int n) const { return taus_[static_cast<std::size_t>(n - 1)]; }
    double expiry(int n) const { return date(n - 1); } // fixing time of rate n

    const std::vector<double>& dates() const { return dates_; }
    const std::vector<double>& year_fractions() const { return taus_; }

  private:
    std::vector<double> dates_;
    std::vector<double> taus_;
};

} // namespace lmm

#endif
