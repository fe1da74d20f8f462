#include "altlab/zoo.hpp"

#include <functional>
#include <map>

namespace altlab {

namespace {

const std::vector<std::string> kAB = {"a", "b"};

void loops(KripkeModel& m) {
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    for (std::size_t w = 0; w < m.num_worlds(); ++w) m.add_edge(a, w, w);
  }
}

void both_ways(KripkeModel& m, const std::string& agent, const std::string& u, const std::string& v) {
  m.add_edge(agent, u, v);
  m.add_edge(agent, v, u);
}

// Non-collapse witness for <a>[b][a]p -> p over S4.
//   a: w1->w2, loops on w1, w2     (2 + 1 = 3 edges)
//   b: loops on w1, w2             (2 edges)
//   p: w2
PointedModel prop6_m() {
  KripkeModel m(kAB, {"w1", "w2"});
  loops(m);
  m.add_edge("a", "w1", "w2");
  m.set_true("p", "w2");
  return make_pointed(std::move(m), "w1");
}

// Symmetric countermodel for <a>[b]<a>p -> <a>p.
//   a: w1<->w2, w2<->w3, loops    (4 + 3 = 7 edges)
//   b: loops                      (3 edges)
//   p: w3
PointedModel prop6_m_prime() {
  KripkeModel m(kAB, {"w1", "w2", "w3"});
  loops(m);
  both_ways(m, "a", "w1", "w2");
  both_ways(m, "a", "w2", "w3");
  m.set_true("p", "w3");
  return make_pointed(std::move(m), "w1");
}

// chi_5 witness; a and b share one relation.
//   w1->w2, w1->w3, w2->w2, w3->w3  (4 edges per agent)
//   p: w3
// The drawing places the label w1 on the middle node and w2 on the left; the
// loops are put on the two successors so that the frame is serial.
PointedModel chi5_m() {
  KripkeModel m(kAB, {"w1", "w2", "w3"});
  for (const auto& a : kAB) {
    m.add_edge(a, "w1", "w2");
    m.add_edge(a, "w1", "w3");
    m.add_edge(a, "w2", "w2");
    m.add_edge(a, "w3", "w3");
  }
  m.set_true("p", "w3");
  return make_pointed(std::move(m), "w1");
}

// chi_D4 witness.
//   a: w1->w2, w2<->w3, w2->w2, w3->w3, v1->v1    (6 edges)
//   b: w1->v1, w2->v1, w3->v1, v1->v1             (4 edges)
//   p: w1, w2, v1
PointedModel chid4_m() {
  KripkeModel m(kAB, {"w1", "w2", "w3", "v1"});
  m.add_edge("a", "w1", "w2");
  both_ways(m, "a", "w2", "w3");
  m.add_edge("a", "w2", "w2");
  m.add_edge("a", "w3", "w3");
  m.add_edge("a", "v1", "v1");
  for (const char* w : {"w1", "w2", "w3", "v1"}) m.add_edge("b", w, "v1");
  for (const char* w : {"w1", "w2", "v1"}) m.set_true("p", w);
  return make_pointed(std::move(m), "w1");
}

// S4 pair, left model. Solid arrows are b, dashed are a; loops restored.
//   b: l_i<->r_i for i = 1..3, loops    (6 + 6 = 12 edges)
//   a: l1->l2, l2->l3, l1->l3, loops    (3 + 6 = 9 edges)
//   p: l3, r3
PointedModel appb_s4_m() {
  KripkeModel m(kAB, {"l1", "r1", "l2", "r2", "l3", "r3"});
  loops(m);
  for (const char* i : {"1", "2", "3"}) both_ways(m, "b", std::string("l") + i, std::string("r") + i);
  m.add_edge("a", "l1", "l2");
  m.add_edge("a", "l2", "l3");
  m.add_edge("a", "l1", "l3");
  m.set_true("p", "l3");
  m.set_true("p", "r3");
  return make_pointed(std::move(m), "l1");
}

// S4 pair, right model. The drawing labels all three left nodes l'1; they are
// read as l'1, l'2, l'3 top to bottom.
//   b: l'_i<->r'_i, loops                                   (6 + 6 = 12 edges)
//   a: l'_i->r'_i, l'1->r'2, l'2->r'3, l'1->r'3, loops      (6 + 6 = 12 edges)
//   p: l'3, r'3
PointedModel appb_s4_n() {
  KripkeModel m(kAB, {"l'1", "r'1", "l'2", "r'2", "l'3", "r'3"});
  loops(m);
  for (const char* i : {"1", "2", "3"}) {
    both_ways(m, "b", std::string("l'") + i, std::string("r'") + i);
    m.add_edge("a", std::string("l'") + i, std::string("r'") + i);
  }
  m.add_edge("a", "l'1", "r'2");
  m.add_edge("a", "l'2", "r'3");
  m.add_edge("a", "l'1", "r'3");
  m.set_true("p", "l'3");
  m.set_true("p", "r'3");
  return make_pointed(std::move(m), "l'1");
}

// KD5 pair, left model; all loops are drawn explicitly.
//   a (dashed): m1->m2, m2->m3, m3->m3    (3 edges)
//   b (solid):  m1->m1, m2->m2, m3->m3    (3 edges)
//   p: m3
PointedModel appb_kd5_m() {
  KripkeModel m(kAB, {"m1", "m2", "m3"});
  m.add_edge("a", "m1", "m2");
  m.add_edge("a", "m2", "m3");
  m.add_edge("a", "m3", "m3");
  for (const char* w : {"m1", "m2", "m3"}) m.add_edge("b", w, w);
  m.set_true("p", "m3");
  return make_pointed(std::move(m), "m1");
}

// KD5 pair, right model.
//   b (solid):  r_i->l_i, l_i->l_i                                    (6 edges)
//   a (dashed): l1->r2, r1->r2, l2->r3, r2->r3, l3->r3, r3->r3        (6 edges)
//   p: l3, r3
PointedModel appb_kd5_n() {
  KripkeModel m(kAB, {"l1", "r1", "l2", "r2", "l3", "r3"});
  for (const char* i : {"1", "2", "3"}) {
    m.add_edge("b", std::string("r") + i, std::string("l") + i);
    m.add_edge("b", std::string("l") + i, std::string("l") + i);
  }
  m.add_edge("a", "l1", "r2");
  m.add_edge("a", "r1", "r2");
  m.add_edge("a", "l2", "r3");
  m.add_edge("a", "r2", "r3");
  m.add_edge("a", "l3", "r3");
  m.add_edge("a", "r3", "r3");
  m.set_true("p", "l3");
  m.set_true("p", "r3");
  return make_pointed(std::move(m), "r1");
}

// B pair, left model. Undirected edges, loops restored.
//   b: l_i-r_i, loops           (6 + 6 = 12 edges)
//   a: l1-l2, l2-l3, loops      (4 + 6 = 10 edges)
//   p: l3, r3
PointedModel appb_b_m() {
  KripkeModel m(kAB, {"l1", "r1", "l2", "r2", "l3", "r3"});
  loops(m);
  for (const char* i : {"1", "2", "3"}) both_ways(m, "b", std::string("l") + i, std::string("r") + i);
  both_ways(m, "a", "l1", "l2");
  both_ways(m, "a", "l2", "l3");
  m.set_true("p", "l3");
  m.set_true("p", "r3");
  return make_pointed(std::move(m), "l1");
}

// B pair, right model.
//   b: l'_i-r'_i, loops             (6 + 6 = 12 edges)
//   a: l'1-r'2, l'2-r'3, loops      (4 + 6 = 10 edges)
//   p: l'3, r'3
PointedModel appb_b_n() {
  KripkeModel m(kAB, {"l'1", "r'1", "l'2", "r'2", "l'3", "r'3"});
  loops(m);
  for (const char* i : {"1", "2", "3"}) both_ways(m, "b", std::string("l'") + i, std::string("r'") + i);
  both_ways(m, "a", "l'1", "r'2");
  both_ways(m, "a", "l'2", "r'3");
  m.set_true("p", "l'3");
  m.set_true("p", "r'3");
  return make_pointed(std::move(m), "l'1");
}

const std::map<std::string, std::function<PointedModel()>>& registry() {
  static const std::map<std::string, std::function<PointedModel()>> r = {
      {"prop6-M", prop6_m},       {"prop6-M'", prop6_m_prime}, {"chi5-M", chi5_m},
      {"chiD4-M", chid4_m},       {"appB-S4-M", appb_s4_m},    {"appB-S4-N", appb_s4_n},
      {"appB-KD5-M", appb_kd5_m}, {"appB-KD5-N", appb_kd5_n},  {"appB-B-M", appb_b_m},
      {"appB-B-N", appb_b_n},
  };
  return r;
}

}  // namespace

PointedModel zoo(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error("unknown zoo model '" + name + "'");
  return it->second();
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {"prop6-M",   "prop6-M'",  "chi5-M",     "chiD4-M",
                                                 "appB-S4-M", "appB-S4-N", "appB-KD5-M", "appB-KD5-N",
                                                 "appB-B-M",  "appB-B-N"};
  return names;
}

}  // namespace altlab
