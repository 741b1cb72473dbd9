#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "ietlab/classify.hpp"
#include "ietlab/cocycle.hpp"
#include "ietlab/cohom.hpp"
#include "ietlab/continued_fraction.hpp"
#include "ietlab/dynsys.hpp"
#include "ietlab/essval.hpp"
#include "ietlab/induction.hpp"
#include "ietlab/towers.hpp"

namespace ietlab {

using Json = nlohmann::ordered_json;

// {"dec": "...", "bits": P}
Json to_json(const Scalar& x);
// accepts {"dec", "bits"}, a decimal string or a JSON number (read from its text)
Scalar scalar_from_json(const Json& j, int bits, const std::string& field);

Json to_json(const ContinuedFraction& cf);
Json to_json(const Iet3& t);
Iet3 iet3_from_json(const Json& j, int bits, const std::string& field);
Json to_json(const Rotation& r);
Json to_json(const KeaneReport& r);

Json to_json(const PiecewiseSmoothFn& f);
PiecewiseSmoothFn cocycle_from_json(const Json& j, int bits, const std::string& field);

Json to_json(const DkReport& r);
Json to_json(const SmallIntegralReport& r);
Json to_json(const InducedSystem& s);
Json to_json(const InductionReport& r);
Json to_json(const RokhlinTower& t);
Json to_json(const BalancedReport& r);
Json to_json(const XiSets& xi);
Json to_json(const EssentialValueReport& r);
Json to_json(const MvtReport& r);
Json to_json(const FraczekReport& r);
Json to_json(const TransferSolution& s);
Json to_json(const GrowthReport& r);
Json to_json(const NonergodicCertificate& c);
Json to_json(const ErgodicityVerdict& v);

// Plain CSV table: header row then rows, values written verbatim.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void write(std::ostream& os) const;
  std::string str() const;
};

// digits used for Scalars in CSV cells
inline constexpr int kCsvDigits = 20;
std::string cell(const Scalar& x);

}  // namespace ietlab
