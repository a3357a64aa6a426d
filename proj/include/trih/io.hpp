// Fan-cycle file format and report plumbing.
//
// A fan-cycle file is a JSON object with exactly the keys
//   rank    lattice rank (nonnegative integer)
//   rays    list of integer vectors, one per ray
//   cones   list of maximal cones as ray-index lists
//   weights object mapping maximal-cone index (as a string) to a positive
//           integer
// Unknown keys are rejected. Schema violations throw ParseError (CLI exit
// 2); mathematically invalid content (non-primitive rays, unbalanced
// weights, ...) surfaces later as failed checks (CLI exit 1).

#ifndef TRIH_IO_HPP
#define TRIH_IO_HPP

#include "trih/fans.hpp"

#include <stdexcept>
#include <string>

namespace trih {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FanCycleFile {
    int rank = 0;
    std::vector<IVec> rays;
    std::vector<ConeKey> cones;            // maximal cones
    std::vector<Integer> weights;          // aligned with cones
};

FanCycleFile parse_fan_cycle(const std::string& json_text);
FanCycleFile load_fan_cycle(const std::string& path);   // ParseError on IO failure too
std::string serialize_fan_cycle(const FanCycleFile& f);

// throws std::invalid_argument on mathematically invalid content
TropicalFanCycle to_cycle(const FanCycleFile& f);

std::string fnv1a_digest(const std::string& bytes);


}  // namespace trih

#endif
