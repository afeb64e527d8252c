#include <gtest/gtest.h>

#include <random>

#include "sessrank/error.hpp"
#include "sessrank/session_log.hpp"
#include "sessrank/text.hpp"
#include "test_paths.hpp"

namespace sessrank {
namespace {

std::vector<Session> sample() {
  return load_session_log(testing::data_path("sample_session.log"));
}

TEST(SessionLog, ParsesSampleSession) {
  const auto sessions = sample();
  ASSERT_EQ(sessions.size(), 1u);
  const Session& s = sessions[0];
  EXPECT_EQ(s.session_id, "11");
  ASSERT_EQ(s.turns.size(), 2u);
  for (const auto& turn : s.turns) {
    EXPECT_EQ(turn.query.text, (Tokens{"4399赛尔号"}));
    EXPECT_EQ(turn.query.qid, "q20");
    ASSERT_EQ(turn.impressions.size(), 10u);
    int clicks = 0;
    for (const auto& imp : turn.impressions) {
      if (imp.clicked) {
        ++clicks;
        EXPECT_EQ(imp.doc_id, "d209");
      }
    }
    EXPECT_EQ(clicks, 1);
  }
  EXPECT_EQ(s.turns[0].issue_time.seconds, 1427845508.16);
}

TEST(SessionLog, ImpressionFields) {
  const auto sessions = sample();
  const auto& imp = sessions[0].turns[0].impressions[0];
  EXPECT_EQ(imp.rank, 1);
  EXPECT_EQ(imp.url, "http://www.4399.com/flash/seer.htm");
  EXPECT_EQ(imp.doc_id, "d209");
  EXPECT_EQ(imp.title, "赛尔号_4399赛尔号游戏在线玩_赛尔号精灵大全_赛尔号攻略");
  EXPECT_TRUE(imp.clicked);
  ASSERT_TRUE(imp.click_time.has_value());
  EXPECT_EQ(imp.click_time->seconds, 1427845518.218);
}

TEST(SessionLog, UnclickedHasNoTime) {
  const auto sessions = sample();
  const auto& imp = sessions[0].turns[0].impressions[1];
  EXPECT_FALSE(imp.clicked);
  EXPECT_FALSE(imp.click_time.has_value());
}

TEST(SessionLog, TitleWithSpaces) {
  const auto s = parse_session_log(
      "SessionID 1\n-----\nfoo bar q1 100\n1 http://x d1 a title with spaces 0 -1\n");
  EXPECT_EQ(s[0].turns[0].query.text, (Tokens{"foo", "bar"}));
  EXPECT_EQ(s[0].turns[0].impressions[0].title, "a title with spaces");
}

TEST(SessionLog, SampleRoundTripsByteExact) {
  const std::string text = testing::slurp(testing::data_path("sample_session.log"));
  EXPECT_EQ(serialize_session_log(parse_session_log(text)), text);
}

TEST(SessionLog, ToyLogRoundTrips) {
  const std::string text = testing::slurp(testing::toy_path("sessions.log"));
  const auto parsed = parse_session_log(text);
  EXPECT_EQ(parse_session_log(serialize_session_log(parsed)), parsed);
}

void expect_malformed(const std::string& text, std::size_t line) {
  try {
    parse_session_log(text);
    FAIL() << "expected MalformedLine for:\n" << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::malformed_line) << e.what();
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(SessionLog, MalformedLines) {
  expect_malformed("Session 11\n", 1);
  expect_malformed("SessionID 1\nfoo q1 1\n", 2);
  expect_malformed("SessionID 1\n-----\nq1 1\n", 3);
  expect_malformed("SessionID 1\n-----\nfoo q1 1\n1 http://x d1 t 2 -1\n", 4);
  expect_malformed("SessionID 1\n-----\nfoo q1 1\n1 http://x d1 t 0 5\n", 4);
  expect_malformed("SessionID 1\n-----\nfoo q1 1\n2 http://x d1 t 0 -1\n", 4);
  expect_malformed("SessionID 1\n-----\nfoo q1 abc\n", 3);
  expect_malformed("SessionID 1\n-----\nfoo q1 1\n1 http://x d1 0 -1\n", 4);
}

TEST(SessionLog, ClickWithoutTimeIsKept) {
  const auto s = parse_session_log("SessionID 1\n-----\nfoo q1 1\n1 http://x d1 t 1 -1\n");
  const auto& imp = s[0].turns[0].impressions[0];
  EXPECT_TRUE(imp.clicked);
  EXPECT_FALSE(imp.click_time.has_value());
}

TEST(SessionLog, DuplicateSessionId) {
  try {
    parse_session_log("SessionID 1\n-----\nfoo q1 1\nSessionID 1\n-----\nbar q2 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate_session_id);
  }
}

TEST(SessionLog, EmptyInput) { EXPECT_TRUE(parse_session_log("").empty()); }

TEST(SessionLog, ValidateReportsWithoutMutating) {
  auto sessions = sample();
  sessions[0].turns[1].issue_time = Timestamp::from_seconds(1.0);
  const auto before = sessions;
  Corpus corpus;
  corpus.add(Document::from_raw("d209", "赛尔号 攻略"));
  const auto report = validate(sessions, corpus);
  EXPECT_EQ(sessions, before);
  EXPECT_EQ(report.unresolved_docs.size(), 18u);  // 9 unresolved per turn
  EXPECT_EQ(report.out_of_order_turns.size(), 1u);
  EXPECT_FALSE(report.clean());
}

// Random well-formed logs survive parse(serialize(parse(x))).
TEST(SessionLog, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    const int n_sessions = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int s = 0; s < n_sessions; ++s) {
      text += "SessionID " + std::to_string(s + 10) + "\n";
      const int n_turns = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int t = 0; t < n_turns; ++t) {
        text += "-----\nquery " + std::to_string(t) + " q" + std::to_string(t) + " " +
                std::to_string(1000 + t) + ".5\n";
        const int n_imp = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int i = 0; i < n_imp; ++i) {
          const bool click = std::bernoulli_distribution(0.3)(rng);
          text += std::to_string(i + 1) + " http://u/" + std::to_string(i) + " d" +
                  std::to_string(i) + " title " + std::to_string(i) +
                  (click ? " 1 2000.25\n" : " 0 -1\n");
        }
      }
    }
    const auto parsed = parse_session_log(text);
    EXPECT_EQ(serialize_session_log(parsed), text);
  }
}

}  // namespace
}  // namespace sessrank
