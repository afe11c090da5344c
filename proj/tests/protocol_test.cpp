#include <string>

#include "doctest.h"
#include "sfv/protocol.hpp"
#include "test_util.hpp"

using namespace sfv;
using sfv::test::flip_bit;

namespace {

RangingEvidence clean_evidence(double d = 150.0, double aoa = 30.0) {
  RangingEvidence ev;
  ev.d_radial = d;
  ev.aoa = aoa;
  ev.aoa_center = aoa;
  ev.rtt = 2.0 * d / kSpeedOfLight + 1e-6;
  ev.d_max = 270.0;
  ev.rtt_max = rtt_max_for(270.0);
  return ev;
}

IdPool pool_of(std::initializer_list<std::uint32_t> values) {
  std::vector<SymmetricId> ids;
  for (const auto v : values) ids.emplace_back(v);
  return IdPool(ids);
}

}  // namespace

TEST_CASE("honest pair is friendly") {
  IdPool a = pool_of({11, 22, 33});
  IdPool b = a;
  RandomStream rng(41);
  Transcript t;
  const Verdict v = run_handshake(a, b, clean_evidence(), HandshakeConfig{}, rng, &t);
  CHECK(v.friendly());
  CHECK(v.reasons.empty());
  CHECK(v.blocks_verified == 4);
  CHECK(v.ranging_attempts == 1);
  CHECK(t.count("exchange", "block", "accepted") == 4);
  CHECK(t.count("verdict", "final", "friendly") == 1);
  CHECK(a.next_index() == 1);
  CHECK(b.next_index() == 1);

  NodeProfile n1;
  NodeProfile n2;
  n1.pool = n2.pool = pool_of({5});
  CHECK(run_handshake(n1, n2, clean_evidence(), HandshakeConfig{}, rng).friendly());
}

TEST_CASE("honest pairs are friendly across a grid") {
  RandomStream rng(42);
  for (double d = 1.0; d <= 270.0; d += 13.0) {
    for (double aoa = 0.0; aoa < 360.0; aoa += 22.5) {
      for (const int m : {1, 4, 16}) {
        HandshakeConfig cfg;
        cfg.m_blocks = m;
        IdPool a = pool_of({static_cast<std::uint32_t>(rng.below(SymmetricId::kLimit))});
        IdPool b = a;
        const Verdict v = run_handshake(a, b, clean_evidence(d, aoa), cfg, rng);
        REQUIRE(v.friendly());
        REQUIRE(v.blocks_verified == m);
      }
    }
  }
}

TEST_CASE("sybil initiator is rejected on the first block") {
  RandomStream rng(43);
  const int trials = 10000;
  int at_first = 0;
  int accepted = 0;
  for (int i = 0; i < trials; ++i) {
    IdPool victim = pool_of({100, 200, 300});
    IdPool attacker = pool_of({static_cast<std::uint32_t>(1000 + rng.below(1000000))});
    const Verdict v = run_handshake(attacker, victim, clean_evidence(), HandshakeConfig{}, rng);
    accepted += v.friendly();
    if (v.reasons.size() == 1 && v.reasons[0] == Reason{ReasonKind::kChecksumBlock, 0}) {
      ++at_first;
      CHECK(v.blocks_verified == 0);
    }
  }
  CHECK(accepted == 0);
  CHECK(at_first == trials);
}

TEST_CASE("tunneled evidence fails before any block is exchanged") {
  RandomStream rng(44);
  IdPool a = pool_of({1});
  IdPool b = a;
  RangingEvidence ev = clean_evidence();
  ev.rtt += 10e-6;
  Transcript t;
  const Verdict v = run_handshake(a, b, ev, HandshakeConfig{}, rng, &t);
  CHECK_FALSE(v.friendly());
  CHECK(v.has(ReasonKind::kThresholdRtt));
  CHECK(v.blocks_verified == 0);
  CHECK(v.ranging_attempts == 2);  // retry_limit 1
  CHECK(t.count("exchange", "block", "accepted") == 0);
  CHECK(t.count("exchange", "block", "rejected") == 0);
  CHECK(t.count("ranging", "attempt-1", "fail:threshold-rtt") == 1);
  CHECK(a.next_index() == 0);
}

TEST_CASE("retry uses fresh evidence") {
  RandomStream rng(45);
  IdPool a = pool_of({9});
  IdPool b = a;
  const RangingEvidence good = clean_evidence();
  RangingEvidence bad = good;
  bad.d_radial = 400.0;
  const Verdict v = run_handshake(
      a, b, [&](int attempt) { return attempt == 0 ? EvidencePair{bad, bad} : EvidencePair{good, good}; },
      HandshakeConfig{}, rng);
  CHECK(v.friendly());
  CHECK(v.ranging_attempts == 2);

  HandshakeConfig no_retry;
  no_retry.retry_limit = 0;
  const Verdict once = run_handshake(
      a, b, [&](int attempt) { return attempt == 0 ? EvidencePair{bad, bad} : EvidencePair{good, good}; },
      no_retry, rng);
  CHECK_FALSE(once.friendly());
  CHECK(once.has(ReasonKind::kThresholdDistance));
}

TEST_CASE("verdict invariant: friendly iff no reasons and all blocks verified") {
  RandomStream rng(46);
  for (int i = 0; i < 2000; ++i) {
    IdPool a = pool_of({1, 2});
    IdPool b = rng.bernoulli(0.5) ? a : pool_of({3, 4});
    RangingEvidence ev = clean_evidence(rng.uniform(0, 300));
    const Verdict v = run_handshake(a, b, ev, HandshakeConfig{}, rng);
    REQUIRE(v.friendly() == (v.reasons.empty() && v.blocks_verified == 4));
  }
}

TEST_CASE("single ciphertext bit flips are rejected") {
  RandomStream rng(47);
  int accepted = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::uint64_t si = rng.next_u64() >> 19;
    const std::uint64_t sn = rng.next_u64() >> 19;
    const SymmetricId id(static_cast<std::uint32_t>(rng.below(SymmetricId::kLimit)));
    SfvSession enc(si, sn, id, Direction::kEncryptor);
    SfvSession dec(si, sn, id, Direction::kDecryptor);
    const Block cipher = enc.encrypt_block(seal_block(rng.payload()));
    if (t == 0) {
      SfvSession copy = dec;
      CHECK(verify_block(copy, cipher) == BlockOutcome::kAccepted);
    }
    const auto pos = static_cast<unsigned>(rng.below(90));
    accepted += verify_block(dec, flip_bit(cipher, pos)) == BlockOutcome::kAccepted;
  }
  CHECK(accepted == 0);
}

TEST_CASE("pad-bit flips land in the checksum bytes") {
  RandomStream rng(48);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t si = rng.next_u64() >> 19;
    const std::uint64_t sn = rng.next_u64() >> 19;
    const SymmetricId id(static_cast<std::uint32_t>(rng.below(SymmetricId::kLimit)));
    SfvSession enc(si, sn, id, Direction::kEncryptor);
    const Block cipher = enc.encrypt_block(seal_block(rng.payload()));
    for (unsigned pos = 90; pos < 96; ++pos) {
      REQUIRE(pos / 8 >= 10);  // bytes 10..11 hold the checksum
      SfvSession dec(si, sn, id, Direction::kDecryptor);
      REQUIRE(verify_block(dec, flip_bit(cipher, pos)) == BlockOutcome::kRejected);
    }
  }
}

TEST_CASE("replayed ciphertext from an earlier session is rejected") {
  RandomStream rng(49);
  const int trials = 20000;
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    const SymmetricId id(static_cast<std::uint32_t>(rng.below(SymmetricId::kLimit)));
    SfvSession old_enc(rng.next_u64() >> 19, rng.next_u64() >> 19, id, Direction::kEncryptor);
    SfvSession fresh(rng.next_u64() >> 19, rng.next_u64() >> 19, id, Direction::kDecryptor);
    accepted += verify_block(fresh, old_enc.encrypt_block(seal_block(rng.payload()))) == BlockOutcome::kAccepted;
  }
  // Rejection rate must be at least 1 - 2^-15.
  CHECK(static_cast<double>(accepted) / trials <= 1.0 / 32768.0);
}

TEST_CASE("transcripts") {
  auto run = [](std::uint64_t seed, RangingEvidence ev) {
    IdPool a = pool_of({7, 8});
    IdPool b = a;
    RandomStream rng(seed);
    Transcript t;
    run_handshake(a, b, ev, HandshakeConfig{}, rng, &t);
    return t.to_text();
  };
  const std::string first = run(50, clean_evidence());
  CHECK(first == run(50, clean_evidence()));
  CHECK(first.rfind("phase,event,block_index,outcome\n", 0) == 0);
  CHECK(first.find("exchange,block,3,accepted\n") != std::string::npos);
  CHECK(first.find("ranging,attempt-0,-,pass\n") != std::string::npos);
  CHECK(first.find("verdict,final,-,friendly\n") != std::string::npos);

  // Seeds are redacted to a digest.
  const RangingEvidence ev = clean_evidence();
  const std::string seed_text = std::to_string(seed_from_rtt(ev));
  CHECK(first.find("," + seed_text + "\n") == std::string::npos);
  CHECK(redact_seeds(1, 2) != redact_seeds(2, 1));
  CHECK(redact_seeds(1, 2).size() == 16);

  RangingEvidence far = clean_evidence();
  far.d_radial = 500.0;
  const std::string failed = run(50, far);
  CHECK(failed.find("exchange") == std::string::npos);
  CHECK(failed.find("fail:threshold-distance") != std::string::npos);

  CHECK(Reason{ReasonKind::kChecksumBlock, 2}.to_string() == "checksum-block-2");
  CHECK(Reason{ReasonKind::kIdMismatch}.to_string() == "id-mismatch");
}

TEST_CASE("handshake configuration errors") {
  HandshakeConfig cfg;
  cfg.m_blocks = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.n_ranging = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.retry_limit = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  IdPool empty;
  IdPool one = pool_of({1});
  RandomStream rng(51);
  CHECK_THROWS_AS(run_handshake(empty, one, clean_evidence(), HandshakeConfig{}, rng), ConfigError);
}
