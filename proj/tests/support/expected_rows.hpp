#pragma once

#include <array>
#include <utility>

// Minimal impossibilities on the 20-axiom space up to domain size 5,
// computed by the exhaustive search and cross-checked against the
// independently provable anchors (the named theorem suite, the n = 3
// brute-force oracle, size histogram 7/36/12, and closure under order
// reversal for rows without MC).  Pairs are (size, axiom mask).
namespace expected {

inline constexpr std::array<std::pair<int, unsigned>, 55> kMinimalRows = {{
    {3, 0x00221u},
    {3, 0x00c01u},
    {3, 0x002c1u},
    {3, 0x80285u},
    {3, 0x80291u},
    {3, 0x80681u},
    {3, 0x82281u},
    {4, 0x81281u},
    {4, 0x00569u},
    {4, 0x005c9u},
    {4, 0x00659u},
    {4, 0x009a9u},
    {4, 0x009c9u},
    {4, 0x00a99u},
    {4, 0x01529u},
    {4, 0x01549u},
    {4, 0x01649u},
    {4, 0x02929u},
    {4, 0x02989u},
    {4, 0x02a89u},
    {4, 0x80619u},
    {4, 0x80989u},
    {4, 0x80a89u},
    {4, 0x81509u},
    {4, 0x81609u},
    {4, 0x89409u},
    {4, 0x91409u},
    {4, 0x0c469u},
    {4, 0x0c4c9u},
    {4, 0x0c8a9u},
    {4, 0x0c8c9u},
    {4, 0x0d429u},
    {4, 0x0d449u},
    {4, 0x0e829u},
    {4, 0x0e889u},
    {4, 0x15429u},
    {4, 0x15449u},
    {4, 0x1a829u},
    {4, 0x1a889u},
    {4, 0x88469u},
    {4, 0x884c9u},
    {4, 0x8c889u},
    {4, 0x98889u},
    {5, 0x00549u},
    {5, 0x00649u},
    {5, 0x00989u},
    {5, 0x00a89u},
    {5, 0x0c449u},
    {5, 0x0c889u},
    {5, 0x14449u},
    {5, 0x18889u},
    {5, 0x8060du},
    {5, 0x82609u},
    {5, 0x88449u},
    {5, 0x90449u},
}};

// Continuation through domain size 7 (22 rows at size 6, 2 at size 7, both
// of the latter containing INT_IND), used by the extended acceptance run.
inline constexpr std::array<std::pair<int, unsigned>, 79> kMinimalRowsTo7 = {{
    {3, 0x00221u},
    {3, 0x00c01u},
    {3, 0x002c1u},
    {3, 0x80285u},
    {3, 0x80291u},
    {3, 0x80681u},
    {3, 0x82281u},
    {4, 0x81281u},
    {4, 0x00569u},
    {4, 0x005c9u},
    {4, 0x00659u},
    {4, 0x009a9u},
    {4, 0x009c9u},
    {4, 0x00a99u},
    {4, 0x01529u},
    {4, 0x01549u},
    {4, 0x01649u},
    {4, 0x02929u},
    {4, 0x02989u},
    {4, 0x02a89u},
    {4, 0x80619u},
    {4, 0x80989u},
    {4, 0x80a89u},
    {4, 0x81509u},
    {4, 0x81609u},
    {4, 0x89409u},
    {4, 0x91409u},
    {4, 0x0c469u},
    {4, 0x0c4c9u},
    {4, 0x0c8a9u},
    {4, 0x0c8c9u},
    {4, 0x0d429u},
    {4, 0x0d449u},
    {4, 0x0e829u},
    {4, 0x0e889u},
    {4, 0x15429u},
    {4, 0x15449u},
    {4, 0x1a829u},
    {4, 0x1a889u},
    {4, 0x88469u},
    {4, 0x884c9u},
    {4, 0x8c889u},
    {4, 0x98889u},
    {5, 0x00549u},
    {5, 0x00649u},
    {5, 0x00989u},
    {5, 0x00a89u},
    {5, 0x0c449u},
    {5, 0x0c889u},
    {5, 0x14449u},
    {5, 0x18889u},
    {5, 0x8060du},
    {5, 0x82609u},
    {5, 0x88449u},
    {5, 0x90449u},
    {6, 0x80609u},
    {6, 0x001cdu},
    {6, 0x011adu},
    {6, 0x0216du},
    {6, 0x0312du},
    {6, 0x0c0cdu},
    {6, 0x248a9u},
    {6, 0x248c9u},
    {6, 0x26889u},
    {6, 0x28469u},
    {6, 0x284c9u},
    {6, 0x29449u},
    {6, 0x8118du},
    {6, 0xa4889u},
    {6, 0x0d0adu},
    {6, 0x0e06du},
    {6, 0x0f02du},
    {6, 0x8d08du},
    {6, 0x980cdu},
    {6, 0x9908du},
    {6, 0x9a06du},
    {6, 0x9b02du},
    {7, 0x24889u},
    {7, 0x28449u},
}};

}  // namespace expected
