#pragma once

// Integer bookkeeping for top-dimension functions. A profile is either the
// closed form k -> floor(k / 2^t), a finite point table, or a composition of
// profiles. Point-table lookups outside the table throw; a profile never
// guesses.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlog {

class DimProfile {
 public:
  enum class Kind { floor_half_power, point_table, composition };

  static DimProfile floor_half_power(int t) {
    if (t < 0) throw std::invalid_argument("floor_half_power: negative exponent");
    DimProfile p;
    p.kind_ = Kind::floor_half_power;
    p.power_ = t;
    return p;
  }

  static DimProfile point_table(std::map<long, long> table) {
    DimProfile p;
    p.kind_ = Kind::point_table;
    p.table_ = std::move(table);
    return p;
  }

  // Evaluates right-to-left: composition({f, g}) is f after g.
  static DimProfile composition(std::vector<DimProfile> parts) {
    DimProfile p;
    p.kind_ = Kind::composition;
    p.parts_ = std::move(parts);
    return p;
  }

  Kind kind() const { return kind_; }
  int power() const { return power_; }
  const std::map<long, long>& table() const { return table_; }
  const std::vector<DimProfile>& parts() const { return parts_; }

  long eval(long k) const {
    if (k < 0) throw std::invalid_argument("profile evaluated at negative value");
    switch (kind_) {
      case Kind::floor_half_power: {
        long v = k;
        for (int i = 0; i < power_ && v > 0; ++i) v /= 2;
        return v;
      }
      case Kind::point_table: {
        auto it = table_.find(k);
        if (it == table_.end())
          throw std::out_of_range("profile point table has no entry for " +
                                  std::to_string(k));
        return it->second;
      }
      case Kind::composition: {
        long v = k;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) v = it->eval(v);
        return v;
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  Kind kind_ = Kind::floor_half_power;
  int power_ = 0;
  std::map<long, long> table_;
  std::vector<DimProfile> parts_;
};

inline long profile_eval(const DimProfile& p, long k) { return p.eval(k); }

}  // namespace qlog
