#include "bicens/censdata.hpp"

namespace bicens {

namespace {

// L1, R1, L2, R2, frequency. Unknown bounds are +-inf.
struct Row {
  double l1, r1, l2, r2;
  int freq;
};

constexpr double I = kInf;

constexpr Row kRows[] = {
    {0, 3, 0, I, 3},     {0, 3, 3, I, 1},     {0, 3, 6, I, 3},     {0, 6, 6, I, 1},
    {0, 3, 9, I, 1},     {0, 3, 12, I, 5},    {0, 3, 15, I, 5},    {0, 6, 15, I, 1},
    {3, 3, 3, I, 1},     {3, 3, 6, I, 1},     {3, 3, 9, I, 3},     {3, 6, 9, I, 2},
    {3, 6, 12, I, 3},    {3, 3, 15, I, 2},    {3, 6, 15, I, 2},    {3, 6, 18, I, 1},
    {3, 3, 21, I, 1},    {6, 6, 0, I, 2},     {6, 9, 0, I, 1},     {6, 9, 9, I, 1},
    {6, 6, 12, I, 1},    {6, 9, 12, I, 2},    {6, 6, 15, I, 1},    {6, 9, 15, I, 1},
    {6, 6, 18, I, 1},    {6, 9, 18, I, 2},    {9, 9, 0, I, 1},     {9, 12, 0, I, 2},
    {9, 9, 9, I, 2},     {9, 12, 9, I, 1},    {9, 12, 12, I, 3},   {9, 9, 15, I, 1},
    {9, 12, 24, I, 1},   {9, 9, 27, I, 1},    {12, 12, 0, I, 1},   {12, 15, 0, I, 1},
    {12, 15, 6, I, 1},   {12, 15, 15, I, 1},  {12, 15, 21, I, 1},  {0, I, 0, I, 6},
    {3, I, 0, I, 2},     {6, I, 0, I, 1},     {6, I, 3, I, 2},     {-I, 0, -I, 0, 1},
    {6, I, 6, I, 3},     {6, I, 9, I, 1},     {9, I, 0, I, 2},     {9, I, 9, I, 3},
    {9, I, 12, I, 1},    {12, I, 0, I, 5},    {12, I, 6, I, 1},    {12, I, 9, I, 4},
    {12, I, 12, I, 10},  {15, I, 0, I, 3},    {15, I, 3, I, 1},    {15, I, 6, I, 1},
    {15, I, 9, I, 2},    {15, I, 12, I, 8},   {15, I, 15, I, 9},   {18, I, 0, I, 1},
    {18, I, 6, I, 1},    {18, I, 9, I, 1},    {18, I, 12, I, 1},   {18, I, 15, I, 3},
    {18, I, 18, I, 6},   {21, I, 15, I, 1},   {-I, 0, 0, I, 9},    {-I, 0, 3, I, 3},
    {-I, 0, 6, I, 10},   {-I, 0, 9, I, 6},    {-I, 0, 12, I, 8},   {-I, 0, 15, I, 5},
    {-I, 0, 18, I, 4},   {-I, 0, 21, I, 1},   {0, I, 0, 3, 1},     {6, I, 0, 6, 1},
    {6, I, 6, 6, 1},     {12, I, 0, 3, 1},    {12, I, 0, 6, 1},    {15, I, 0, 3, 1},
    {21, I, 15, 15, 1},  {3, I, -I, 0, 1},    {9, I, -I, 0, 1},    {12, I, -I, 0, 1},
    {0, 3, 0, 6, 1},     {3, 6, 6, 12, 1},    {9, 9, 9, 9, 1},
};

}  // namespace

Dataset bf_dataset() {
  Dataset data;
  data.kind = DataKind::kCase2;
  for (const auto& row : kRows) {
    CensoringRectangle r;
    r.l1 = row.l1;
    r.r1 = row.r1;
    r.l2 = row.l2;
    r.r2 = row.r2;
    r.freq = row.freq;
    data.rectangles.push_back(r);
    data.n += r.freq;
  }
  return data;
}

}  // namespace bicens
