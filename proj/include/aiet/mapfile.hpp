#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aiet/distortion.hpp"
#include "aiet/map.hpp"

namespace aiet {

struct ParseError : std::runtime_error {
    long line, column;

    ParseError(long line_, long column_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

/// A parsed map-description file.  One construct per line:
///
///   # comment
///   map R  = rotation(sqrt(2) - 1)
///   map T  = rrot(1/2, 1, sqrt(2)/16)      # restricted rotation of [a, b)
///   map E  = iet(2 4 1 3 ; 1/4 1/4 1/4 1/4)
///   map B  = bmap(2, 1/3)                  # two-slope map B_{l1,l2}
///   map F  = pieces(0 | 1/2 | 0 ; 1/2 | 3/2 | -1/2)
///   map C  = compose(R, B)                 # also: inverse(B), power(B, 3),
///   map K  = conjugate(R, F)               #       conjugate(f, h) = h f h^-1
///   map I  = identity()
///   group G = R, B
struct MapFile {
    std::vector<std::string> map_names;  // definition order
    std::map<std::string, Aiet> maps;
    std::vector<std::string> group_names;
    std::map<std::string, std::vector<std::string>> groups;

    /// The named map; the error lists the available names.
    const Aiet& map(const std::string& name) const;
    /// The named group as a generating set.
    GeneratingSet group(const std::string& name) const;
    std::vector<std::string> group_members(const std::string& name) const;
};

MapFile parse_map_file(const std::string& text);
MapFile load_map_file(const std::string& path);

}  // namespace aiet
