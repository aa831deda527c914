// Copyright 2026 The qetnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "qetnet/errors.hpp"
#include "qetnet/kernels.hpp"
#include "qetnet/teleport.hpp"
#include "test_support.hpp"

using namespace qetnet;

TEST(Teleport, BellExtensionAppendsMaximallyEntangledPair)
{
    const auto s = extend_with_bell(StateVector::basis(1, 1));
    EXPECT_EQ(s.n_qubits(), 3u);
    EXPECT_NEAR(expectation(s, ObservableSum::term(1.0, PauliString::from_letters("IXX"))), 1.0, 1e-12);
    EXPECT_NEAR(expectation(s, ObservableSum::term(1.0, PauliString::from_letters("IZZ"))), 1.0, 1e-12);
    EXPECT_NEAR(expectation(s, ObservableSum::term(1.0, PauliString::from_letters("ZII"))), -1.0, 1e-12);
    EXPECT_THROW(extend_with_bell(StateVector::basis(kMaxDenseQubits - 1, 0)), CapacityError);
}

TEST(Teleport, EveryBranchCarriesTheEntangledInput)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        // Qubit 1 is teleported; qubit 0 stays entangled with it.
        const StateVector input = testing_support::random_state(2, rng);
        const Ensemble branches = teleport_branches(extend_with_bell(input), 1, {2, 3});
        ASSERT_EQ(branches.size(), 4u);
        for (const auto& b : branches.branches()) {
            EXPECT_NEAR(b.probability, 0.25, 1e-12);
            ASSERT_EQ(b.label.bits.size(), 2u);
            // Drop qubits 1 and 2; the target (old qubit 3) lands in slot 1.
            const StateVector out = discard_measured(b.state, {1, 2});
            EXPECT_NEAR(out.fidelity(input), 1.0, 1e-12);
        }
    }
}

TEST(Teleport, RejectsNonBellPair)
{
    const auto s = StateVector::basis(4, 0);
    EXPECT_THROW(teleport_branches(s, 1, {2, 3}), InvalidArgument);
    const auto e = extend_with_bell(StateVector::basis(2, 0));
    EXPECT_THROW(teleport_branches(e, 2, {2, 3}), InvalidArgument);
    EXPECT_THROW(teleport_branches(e, 1, {2, 7}), InvalidArgument);
}

TEST(Teleport, SampledTeleportRecordsTwoCorrectionBits)
{
    std::mt19937_64 rng(42);
    const StateVector input = testing_support::random_state(2, rng);
    LoccTranscript transcript;
    ShotRng shot(1, 2, 3);
    const StateVector out = teleport_qubit(extend_with_bell(input), 1, {2, 3}, "a", "b", transcript, shot);
    EXPECT_EQ(transcript.count(MessagePurpose::TeleportCorrection), 2u);
    EXPECT_EQ(transcript.bit_count(MessagePurpose::TeleportCorrection), 2u);
    EXPECT_NEAR(discard_measured(out, {1, 2}).fidelity(input), 1.0, 1e-12);
}

TEST(Teleport, DiscardMeasuredValidates)
{
    const auto plus = apply_hadamard(StateVector::basis(2, 0), 0);
    EXPECT_THROW(discard_measured(plus, {0}), InvalidArgument);
    EXPECT_THROW(discard_measured(plus, {5}), DimensionError);
    EXPECT_THROW(discard_measured(plus, {0, 1}), DimensionError);
    const StateVector kept = discard_measured(plus, {1});
    EXPECT_EQ(kept.n_qubits(), 1u);
}

TEST(Transcript, TextRoundTrip)
{
    LoccTranscript t;
    t.append("alice", "bob,charlie", MessagePurpose::MuBroadcast, {1});
    t.append("charlie", "bob", MessagePurpose::TeleportCorrection, {0});
    t.append("charlie", "bob", MessagePurpose::TeleportCorrection, {1});
    const std::string text = t.to_text();
    EXPECT_EQ(text, "0 alice bob,charlie mu-broadcast 1\n"
                    "1 charlie bob teleport-corrections 0\n"
                    "2 charlie bob teleport-corrections 1\n");
    const LoccTranscript back = LoccTranscript::parse(text);
    EXPECT_EQ(back.to_text(), text);
    EXPECT_EQ(back.count(MessagePurpose::MuBroadcast), 1u);
}

TEST(Transcript, ParseRejectsMalformedInput)
{
    EXPECT_THROW(LoccTranscript::parse("0 a b nonsense 1\n"), InvalidArgument);
    EXPECT_THROW(LoccTranscript::parse("1 a b mu-broadcast 1\n"), InvalidArgument);
    EXPECT_THROW(LoccTranscript::parse("0 a b mu-broadcast 2\n"), InvalidArgument);
    EXPECT_THROW(LoccTranscript::parse("0 a\n"), InvalidArgument);
}

TEST(RelayPlanTest, NodesAndAncillas)
{
    const RelayPlan plan{3};
    EXPECT_EQ(plan.node_names(), (std::vector<std::string>{"charlie", "relay1", "relay2", "bob"}));
    EXPECT_EQ(plan.ancillas(0), (std::pair<std::size_t, std::size_t>{2, 3}));
    EXPECT_THROW((void)plan.ancillas(3), InvalidArgument);
}

TEST(LongRange, MatchesDirectRunForSeveralHops)
{
    for (int hops : {1, 2, 3}) {
        for (double h : {0.5, 1.0, 2.0}) {
            for (double k : {0.5, 1.0, 2.0}) {
                const LongRangeResult relay = run_longrange_qet({h, k}, hops, 99);
                const QetRecord direct = run_minimal_qet({h, k});
                EXPECT_NEAR(relay.record.e0, direct.e0, 1e-10);
                EXPECT_NEAR(relay.record.receivers.at(1).hx, direct.receivers.at(1).hx, 1e-10);
                EXPECT_NEAR(relay.record.receivers.at(1).hz, direct.receivers.at(1).hz, 1e-10);
                EXPECT_NEAR(relay.record.angles.at(1).theta, direct.angles.at(1).theta, 1e-12);
                EXPECT_LT(relay.sampled_infidelity, 1e-10);
            }
        }
    }
}

TEST(LongRange, TranscriptShape)
{
    for (int hops : {1, 2, 3}) {
        const LongRangeResult r = run_longrange_qet({1, 1}, hops, 5);
        EXPECT_EQ(r.transcript.messages().size(), 1u + 2u * static_cast<std::size_t>(hops));
        EXPECT_EQ(r.transcript.count(MessagePurpose::MuBroadcast), 1u);
        EXPECT_EQ(r.transcript.messages().front().from, "alice");
        EXPECT_EQ(r.transcript.messages().back().to, "bob");
    }
}

TEST(LongRange, DeterministicForFixedSeed)
{
    const auto a = run_longrange_qet({1, 1}, 2, 17);
    const auto b = run_longrange_qet({1, 1}, 2, 17);
    EXPECT_EQ(a.transcript.to_text(), b.transcript.to_text());
    EXPECT_THROW(run_longrange_qet({1, 1}, 0), InvalidArgument);
}

TEST(LongRange, RelayIsIdentityChannel)
{
    for (int hops : {1, 2, 3}) EXPECT_LE(relay_identity_check(hops, 50), 1e-12);
    EXPECT_THROW(relay_identity_check(0), InvalidArgument);
}
