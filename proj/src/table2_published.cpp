#include "merit/design_search.hpp"

namespace merit {

namespace {

constexpr PublishedCell kTable2[] = {
    {0.1, 0.3, 2, 0.1, 0.6, PowerKind::I, {26, 7, 6}},
    {0.1, 0.3, 2, 0.1, 0.6, PowerKind::II, {25, 6, 5}},
    {0.1, 0.3, 2, 0.2, 0.6, PowerKind::I, {23, 6, 5}},
    {0.1, 0.3, 2, 0.2, 0.6, PowerKind::II, {18, 5, 4}},
    {0.1, 0.3, 2, 0.3, 0.6, PowerKind::I, {21, 6, 4}},
    {0.1, 0.3, 2, 0.3, 0.6, PowerKind::II, {13, 4, 3}},
    {0.1, 0.3, 2, 0.1, 0.7, PowerKind::I, {33, 9, 7}},
    {0.1, 0.3, 2, 0.1, 0.7, PowerKind::II, {33, 8, 6}},
    {0.1, 0.3, 2, 0.2, 0.7, PowerKind::I, {30, 8, 6}},
    {0.1, 0.3, 2, 0.2, 0.7, PowerKind::II, {24, 7, 5}},
    {0.1, 0.3, 2, 0.3, 0.7, PowerKind::I, {27, 8, 5}},
    {0.1, 0.3, 2, 0.3, 0.7, PowerKind::II, {19, 6, 4}},
    {0.1, 0.3, 2, 0.1, 0.8, PowerKind::I, {44, 12, 8}},
    {0.1, 0.3, 2, 0.1, 0.8, PowerKind::II, {39, 11, 8}},
    {0.1, 0.3, 2, 0.2, 0.8, PowerKind::I, {39, 11, 7}},
    {0.1, 0.3, 2, 0.2, 0.8, PowerKind::II, {30, 8, 5}},
    {0.1, 0.3, 2, 0.3, 0.8, PowerKind::I, {39, 11, 7}},
    {0.1, 0.3, 2, 0.3, 0.8, PowerKind::II, {25, 7, 4}},
    {0.1, 0.3, 3, 0.1, 0.6, PowerKind::I, {33, 8, 6}},
    {0.1, 0.3, 3, 0.1, 0.6, PowerKind::II, {27, 7, 6}},
    {0.1, 0.3, 3, 0.2, 0.6, PowerKind::I, {28, 8, 6}},
    {0.1, 0.3, 3, 0.2, 0.6, PowerKind::II, {18, 5, 4}},
    {0.1, 0.3, 3, 0.3, 0.6, PowerKind::I, {27, 8, 5}},
    {0.1, 0.3, 3, 0.3, 0.6, PowerKind::II, {14, 4, 3}},
    {0.1, 0.3, 3, 0.1, 0.7, PowerKind::I, {40, 11, 8}},
    {0.1, 0.3, 3, 0.1, 0.7, PowerKind::II, {33, 9, 7}},
    {0.1, 0.3, 3, 0.2, 0.7, PowerKind::I, {35, 10, 7}},
    {0.1, 0.3, 3, 0.2, 0.7, PowerKind::II, {25, 7, 5}},
    {0.1, 0.3, 3, 0.3, 0.7, PowerKind::I, {35, 10, 7}},
    {0.1, 0.3, 3, 0.3, 0.7, PowerKind::II, {20, 6, 4}},
    {0.1, 0.3, 3, 0.1, 0.8, PowerKind::I, {47, 13, 9}},
    {0.1, 0.3, 3, 0.1, 0.8, PowerKind::II, {40, 11, 8}},
    {0.1, 0.3, 3, 0.2, 0.8, PowerKind::I, {47, 13, 9}},
    {0.1, 0.3, 3, 0.2, 0.8, PowerKind::II, {31, 9, 6}},
    {0.1, 0.3, 3, 0.3, 0.8, PowerKind::I, {47, 13, 9}},
    {0.1, 0.3, 3, 0.3, 0.8, PowerKind::II, {26, 8, 5}},
    {0.2, 0.4, 2, 0.1, 0.6, PowerKind::I, {30, 8, 10}},
    {0.2, 0.4, 2, 0.1, 0.6, PowerKind::II, {26, 7, 9}},
    {0.2, 0.4, 2, 0.2, 0.6, PowerKind::I, {25, 7, 8}},
    {0.2, 0.4, 2, 0.2, 0.6, PowerKind::II, {18, 5, 6}},
    {0.2, 0.4, 2, 0.3, 0.6, PowerKind::I, {23, 7, 7}},
    {0.2, 0.4, 2, 0.3, 0.6, PowerKind::II, {18, 5, 6}},
    {0.2, 0.4, 2, 0.1, 0.7, PowerKind::I, {38, 10, 12}},
    {0.2, 0.4, 2, 0.1, 0.7, PowerKind::II, {34, 9, 11}},
    {0.2, 0.4, 2, 0.2, 0.7, PowerKind::I, {33, 9, 10}},
    {0.2, 0.4, 2, 0.2, 0.7, PowerKind::II, {25, 7, 8}},
    {0.2, 0.4, 2, 0.3, 0.7, PowerKind::I, {31, 9, 9}},
    {0.2, 0.4, 2, 0.3, 0.7, PowerKind::II, {20, 6, 6}},
    {0.2, 0.4, 2, 0.1, 0.8, PowerKind::I, {47, 13, 14}},
    {0.2, 0.4, 2, 0.1, 0.8, PowerKind::II, {45, 12, 14}},
    {0.2, 0.4, 2, 0.2, 0.8, PowerKind::I, {44, 13, 13}},
    {0.2, 0.4, 2, 0.2, 0.8, PowerKind::II, {35, 10, 10}},
    {0.2, 0.4, 2, 0.3, 0.8, PowerKind::I, {44, 13, 13}},
    {0.2, 0.4, 2, 0.3, 0.8, PowerKind::II, {24, 7, 7}},
    {0.2, 0.4, 3, 0.1, 0.6, PowerKind::I, {34, 9, 11}},
    {0.2, 0.4, 3, 0.1, 0.6, PowerKind::II, {27, 7, 9}},
    {0.2, 0.4, 3, 0.2, 0.6, PowerKind::I, {32, 9, 10}},
    {0.2, 0.4, 3, 0.2, 0.6, PowerKind::II, {19, 5, 6}},
    {0.2, 0.4, 3, 0.3, 0.6, PowerKind::I, {31, 9, 9}},
    {0.2, 0.4, 3, 0.3, 0.6, PowerKind::II, {18, 5, 6}},
    {0.2, 0.4, 3, 0.1, 0.7, PowerKind::I, {44, 12, 14}},
    {0.2, 0.4, 3, 0.1, 0.7, PowerKind::II, {36, 10, 12}},
    {0.2, 0.4, 3, 0.2, 0.7, PowerKind::I, {41, 12, 12}},
    {0.2, 0.4, 3, 0.2, 0.7, PowerKind::II, {26, 7, 8}},
    {0.2, 0.4, 3, 0.3, 0.7, PowerKind::I, {41, 12, 12}},
    {0.2, 0.4, 3, 0.3, 0.7, PowerKind::II, {23, 7, 7}},
    {0.2, 0.4, 3, 0.1, 0.8, PowerKind::I, {55, 16, 17}},
    {0.2, 0.4, 3, 0.1, 0.8, PowerKind::II, {47, 13, 15}},
    {0.2, 0.4, 3, 0.2, 0.8, PowerKind::I, {55, 16, 16}},
    {0.2, 0.4, 3, 0.2, 0.8, PowerKind::II, {37, 11, 11}},
    {0.2, 0.4, 3, 0.3, 0.8, PowerKind::I, {55, 16, 16}},
    {0.2, 0.4, 3, 0.3, 0.8, PowerKind::II, {24, 7, 7}},
    {0.3, 0.5, 2, 0.1, 0.6, PowerKind::I, {30, 8, 13}},
    {0.3, 0.5, 2, 0.1, 0.6, PowerKind::II, {28, 7, 12}},
    {0.3, 0.5, 2, 0.2, 0.6, PowerKind::I, {28, 8, 12}},
    {0.3, 0.5, 2, 0.2, 0.6, PowerKind::II, {19, 5, 8}},
    {0.3, 0.5, 2, 0.3, 0.6, PowerKind::I, {25, 7, 10}},
    {0.3, 0.5, 2, 0.3, 0.6, PowerKind::II, {14, 4, 6}},
    {0.3, 0.5, 2, 0.1, 0.7, PowerKind::I, {40, 11, 17}},
    {0.3, 0.5, 2, 0.1, 0.7, PowerKind::II, {37, 10, 16}},
    {0.3, 0.5, 2, 0.2, 0.7, PowerKind::I, {34, 10, 14}},
    {0.3, 0.5, 2, 0.2, 0.7, PowerKind::II, {28, 8, 12}},
    {0.3, 0.5, 2, 0.3, 0.7, PowerKind::I, {33, 10, 13}},
    {0.3, 0.5, 2, 0.3, 0.7, PowerKind::II, {22, 6, 9}},
    {0.3, 0.5, 2, 0.1, 0.8, PowerKind::I, {53, 15, 22}},
    {0.3, 0.5, 2, 0.1, 0.8, PowerKind::II, {44, 12, 18}},
    {0.3, 0.5, 2, 0.2, 0.8, PowerKind::I, {48, 14, 19}},
    {0.3, 0.5, 2, 0.2, 0.8, PowerKind::II, {34, 10, 14}},
    {0.3, 0.5, 2, 0.3, 0.8, PowerKind::I, {46, 14, 18}},
    {0.3, 0.5, 2, 0.3, 0.8, PowerKind::II, {28, 8, 11}},
    {0.3, 0.5, 3, 0.1, 0.6, PowerKind::I, {37, 10, 16}},
    {0.3, 0.5, 3, 0.1, 0.6, PowerKind::II, {34, 9, 15}},
    {0.3, 0.5, 3, 0.2, 0.6, PowerKind::I, {34, 9, 14}},
    {0.3, 0.5, 3, 0.2, 0.6, PowerKind::II, {19, 5, 8}},
    {0.3, 0.5, 3, 0.3, 0.6, PowerKind::I, {34, 10, 13}},
    {0.3, 0.5, 3, 0.3, 0.6, PowerKind::II, {19, 5, 8}},
    {0.3, 0.5, 3, 0.1, 0.7, PowerKind::I, {47, 13, 20}},
    {0.3, 0.5, 3, 0.1, 0.7, PowerKind::II, {38, 10, 16}},
    {0.3, 0.5, 3, 0.2, 0.7, PowerKind::I, {44, 13, 18}},
    {0.3, 0.5, 3, 0.2, 0.7, PowerKind::II, {29, 8, 12}},
    {0.3, 0.5, 3, 0.3, 0.7, PowerKind::I, {44, 13, 17}},
    {0.3, 0.5, 3, 0.3, 0.7, PowerKind::II, {24, 7, 10}},
    {0.3, 0.5, 3, 0.1, 0.8, PowerKind::I, {57, 16, 23}},
    {0.3, 0.5, 3, 0.1, 0.8, PowerKind::II, {49, 13, 20}},
    {0.3, 0.5, 3, 0.2, 0.8, PowerKind::I, {57, 16, 23}},
    {0.3, 0.5, 3, 0.2, 0.8, PowerKind::II, {35, 10, 14}},
    {0.3, 0.5, 3, 0.3, 0.8, PowerKind::I, {57, 16, 23}},
    {0.3, 0.5, 3, 0.3, 0.8, PowerKind::II, {28, 8, 11}},
    {0.4, 0.6, 2, 0.1, 0.6, PowerKind::I, {34, 9, 18}},
    {0.4, 0.6, 2, 0.1, 0.6, PowerKind::II, {28, 7, 15}},
    {0.4, 0.6, 2, 0.2, 0.6, PowerKind::I, {25, 7, 13}},
    {0.4, 0.6, 2, 0.2, 0.6, PowerKind::II, {19, 5, 10}},
    {0.4, 0.6, 2, 0.3, 0.6, PowerKind::I, {24, 7, 12}},
    {0.4, 0.6, 2, 0.3, 0.6, PowerKind::II, {16, 4, 8}},
    {0.4, 0.6, 2, 0.1, 0.7, PowerKind::I, {43, 12, 23}},
    {0.4, 0.6, 2, 0.1, 0.7, PowerKind::II, {38, 10, 20}},
    {0.4, 0.6, 2, 0.2, 0.7, PowerKind::I, {35, 10, 18}},
    {0.4, 0.6, 2, 0.2, 0.7, PowerKind::II, {25, 7, 13}},
    {0.4, 0.6, 2, 0.3, 0.7, PowerKind::I, {34, 10, 17}},
    {0.4, 0.6, 2, 0.3, 0.7, PowerKind::II, {18, 5, 9}},
    {0.4, 0.6, 2, 0.1, 0.8, PowerKind::I, {52, 15, 27}},
    {0.4, 0.6, 2, 0.1, 0.8, PowerKind::II, {46, 13, 24}},
    {0.4, 0.6, 2, 0.2, 0.8, PowerKind::I, {50, 15, 25}},
    {0.4, 0.6, 2, 0.2, 0.8, PowerKind::II, {32, 9, 16}},
    {0.4, 0.6, 2, 0.3, 0.8, PowerKind::I, {49, 15, 24}},
    {0.4, 0.6, 2, 0.3, 0.8, PowerKind::II, {29, 8, 14}},
    {0.4, 0.6, 3, 0.1, 0.6, PowerKind::I, {38, 10, 20}},
    {0.4, 0.6, 3, 0.1, 0.6, PowerKind::II, {32, 8, 17}},
    {0.4, 0.6, 3, 0.2, 0.6, PowerKind::I, {35, 10, 18}},
    {0.4, 0.6, 3, 0.2, 0.6, PowerKind::II, {23, 6, 12}},
    {0.4, 0.6, 3, 0.3, 0.6, PowerKind::I, {34, 10, 17}},
    {0.4, 0.6, 3, 0.3, 0.6, PowerKind::II, {17, 5, 9}},
    {0.4, 0.6, 3, 0.1, 0.7, PowerKind::I, {46, 13, 24}},
    {0.4, 0.6, 3, 0.1, 0.7, PowerKind::II, {39, 11, 21}},
    {0.4, 0.6, 3, 0.2, 0.7, PowerKind::I, {44, 13, 22}},
    {0.4, 0.6, 3, 0.2, 0.7, PowerKind::II, {29, 8, 15}},
    {0.4, 0.6, 3, 0.3, 0.7, PowerKind::I, {44, 13, 22}},
    {0.4, 0.6, 3, 0.3, 0.7, PowerKind::II, {22, 6, 11}},
    {0.4, 0.6, 3, 0.1, 0.8, PowerKind::I, {59, 17, 30}},
    {0.4, 0.6, 3, 0.1, 0.8, PowerKind::II, {46, 13, 24}},
    {0.4, 0.6, 3, 0.2, 0.8, PowerKind::I, {59, 17, 30}},
    {0.4, 0.6, 3, 0.2, 0.8, PowerKind::II, {36, 10, 18}},
    {0.4, 0.6, 3, 0.3, 0.8, PowerKind::I, {59, 17, 30}},
    {0.4, 0.6, 3, 0.3, 0.8, PowerKind::II, {29, 8, 14}},
};

}  // namespace

std::span<const PublishedCell> published_table2() { return kTable2; }

}  // namespace merit
