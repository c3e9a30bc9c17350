#include "traveller.hpp"

#include <stdexcept>

namespace rmstest::traveller {

using namespace rms;

namespace {

const Sort kStr = Sort::Str;

GlobalTypePtr msg(const char* p, const char* q, const char* l, GlobalTypePtr cont) {
  return comm(p, q, {{l, std::nullopt, std::move(cont)}});
}

ProcessPtr snd(const char* q, const char* l, ProcessPtr cont) { return send(q, l, nullptr, std::move(cont)); }

ProcessPtr ck_B_Tr() {
  return input("Al", {{"nAv", std::nullopt, inact()}, {"av", std::nullopt, inact()}}, "B");
}

ProcessPtr P1_Tr() {
  return input("Ht", {{"nAv", std::nullopt, snd("Al", "ds", inact())}, {"av", std::nullopt, snd("Al", "rs", ck_B_Tr())}},
               "A");
}

ProcessPtr ck_A_Ht() { return output("Tr", {{"nAv", nullptr, inact()}, {"av", nullptr, inact()}}, "A"); }

ProcessPtr ck_B_Al() { return output("Tr", {{"nAv", nullptr, inact()}, {"av", nullptr, inact()}}, "B"); }

ProcessPtr P1_Al() { return input("Tr", {{"ds", std::nullopt, inact()}, {"rs", std::nullopt, ck_B_Al()}}, "A"); }

}  // namespace

GlobalTypePtr G2() {
  return comm("Al", "Tr", {{"nAv", std::nullopt, global_end()}, {"av", std::nullopt, global_end()}}, "B");
}

GlobalTypePtr G1() {
  return comm("Ht", "Tr",
              {{"nAv", std::nullopt, msg("Tr", "Al", "ds", global_end())}, {"av", std::nullopt, msg("Tr", "Al", "rs", G2())}},
              "A");
}

GlobalTypePtr G() {
  return comm("Tr", "Ht", {{"qr", kStr, comm("Tr", "Al", {{"qr", kStr, G1()}})}});
}

ProcessPtr P_Tr() { return send("Ht", "qr", lit("in"), send("Al", "qr", lit("in"), P1_Tr())); }

ProcessPtr P_Ht() { return input("Tr", {{"qr", Binder{"x", kStr}, ck_A_Ht()}}); }

ProcessPtr P_Al() { return input("Tr", {{"qr", Binder{"x", kStr}, P1_Al()}}); }

SessionTypePtr T_Tr() {
  auto ckB = inter("Al", {{"nAv", std::nullopt, end_type()}, {"av", std::nullopt, end_type()}}, "B");
  auto ckA = inter("Ht",
                   {{"nAv", std::nullopt, union_type("Al", {{"ds", std::nullopt, end_type()}})},
                    {"av", std::nullopt, union_type("Al", {{"rs", std::nullopt, ckB}})}},
                   "A");
  return union_type("Ht", {{"qr", kStr, union_type("Al", {{"qr", kStr, ckA}})}});
}

SessionTypePtr T_Ht() {
  auto ckA = union_type("Tr", {{"nAv", std::nullopt, end_type()}, {"av", std::nullopt, end_type()}}, "A");
  return inter("Tr", {{"qr", kStr, ckA}});
}

SessionTypePtr T_Al() {
  auto ckB = union_type("Tr", {{"nAv", std::nullopt, end_type()}, {"av", std::nullopt, end_type()}}, "B");
  auto ckA = inter("Tr", {{"ds", std::nullopt, end_type()}, {"rs", std::nullopt, ckB}}, "A");
  return inter("Tr", {{"qr", kStr, ckA}});
}

Configuration C(int k) {
  switch (k) {
    case 1: return Configuration(send("Al", "qr", lit("in"), P1_Tr()));
    case 2: return Configuration(P1_Tr());
    case 3: return Configuration(snd("Al", "rs", ck_B_Tr()), {P1_Tr()});
    case 4: return Configuration(ck_B_Tr(), {P1_Tr()});
    case 5: return Configuration(inact(), {P1_Tr(), ck_B_Tr()});
    case 6: return Configuration(ck_A_Ht());
    case 7: return Configuration(snd("Tr", "av", inact()), {ck_A_Ht()});
    case 8: return Configuration(inact(), {ck_A_Ht()});
    case 9: return Configuration(P1_Al());
    case 10: return Configuration(ck_B_Al(), {P1_Al()});
    case 11: return Configuration(snd("Tr", "av", inact()), {P1_Al(), ck_B_Al()});
    case 12: return Configuration(inact(), {P1_Al(), ck_B_Al()});
  }
  throw std::out_of_range("no configuration C" + std::to_string(k));
}

namespace {

Session session(Configuration tr, Configuration ht, Configuration al) {
  return {{"Tr", std::move(tr)}, {"Ht", std::move(ht)}, {"Al", std::move(al)}};
}

}  // namespace

Session initial() { return session(Configuration(P_Tr()), Configuration(P_Ht()), Configuration(P_Al())); }

std::vector<Session> after_steps() {
  return {
      session(C(1), C(6), Configuration(P_Al())),
      session(C(2), C(6), C(9)),
      session(C(2), C(7), C(9)),
      session(C(3), C(8), C(9)),
      session(C(4), C(8), C(10)),
      session(C(4), C(8), C(11)),
      session(C(5), C(8), C(12)),
  };
}

std::vector<GlobalPair> tracked_pairs() {
  auto g1_body = strip_checkpoint(G1());
  auto g2_body = strip_checkpoint(G2());
  return {
      GlobalPair(G()),
      GlobalPair(comm("Tr", "Al", {{"qr", kStr, G1()}})),
      GlobalPair(G1()),
      GlobalPair(g1_body, {G1()}),
      GlobalPair(msg("Tr", "Al", "rs", G2()), {G1()}),
      GlobalPair(G2(), {G1()}),
      GlobalPair(g2_body, {G1(), G2()}),
      GlobalPair(global_end(), {G1(), G2()}),
  };
}

GlobalPair printed_pair(int k) {
  switch (k) {
    case 4: return GlobalPair(msg("Ht", "Tr", "av", msg("Tr", "Al", "rs", G2())), {G1()});
    case 7: return GlobalPair(msg("Al", "Tr", "av", global_end()), {G1(), G2()});
    default: return tracked_pairs().at(static_cast<std::size_t>(k - 1));
  }
}

Session rolled_back_to_B() { return session(C(4), C(8), C(10)); }
Session rolled_back_to_A() { return session(C(2), C(6), C(9)); }

}  // namespace rmstest::traveller
