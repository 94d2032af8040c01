#include <gtest/gtest.h>
#include <httplib.h>

#include "daemon_harness.hpp"
#include "netprofile/json_codec.hpp"

namespace netprofile {
namespace {

using namespace testing;

const NetworkId kA("192.168.1.7_192.168.1.1");
const NetworkId kB("10.0.0.5_nodns");

ApiResponse call(DaemonHarness& h, const std::string& method, const std::string& path, const std::string& body = {},
                 std::map<std::string, std::string> query = {}) {
    return h.handler.handle(ApiRequest{method, path, std::move(query), body});
}

const std::string kOfficeBody = R"({"display_name":"Office","homepage_url":"http://www.office.com","email_command":"thunderbird"})";

TEST(ControlApi, StatusStates) {
    DaemonHarness h;
    EXPECT_EQ(call(h, "GET", "/status").body["state"], "disconnected");
    h.repo.store(kA, profile_from_json(Json::parse(kOfficeBody)));
    h.daemon.tick(kA);
    const auto r = call(h, "GET", "/status");
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body.dump(), R"({"state":"known","network_id":"192.168.1.7_192.168.1.1","is_home":false})");
}

TEST(ControlApi, PendingSubmitFlow) {
    DaemonHarness h;
    h.daemon.tick(kB);
    EXPECT_EQ(call(h, "GET", "/status").body["state"], "pending");

    const auto wrong = call(h, "POST", "/pending/C/profile", kOfficeBody);
    EXPECT_EQ(wrong.status, 409);
    EXPECT_EQ(wrong.body["code"], 409);
    EXPECT_TRUE(wrong.body["message"].is_string());

    const auto ok = call(h, "POST", "/pending/" + kB.str() + "/profile", kOfficeBody);
    ASSERT_EQ(ok.status, 200);
    EXPECT_EQ(ok.body["status"]["state"], "known");
    ASSERT_EQ(ok.body["events"].size(), 1u);
    EXPECT_EQ(ok.body["events"][0]["kind"], "ProfileApplied");

    const auto events = call(h, "GET", "/events", {}, {{"since", "0"}});
    ASSERT_EQ(events.body["events"].size(), 2u);
    EXPECT_EQ(events.body["events"][0]["kind"], "UnknownNetwork");
    EXPECT_EQ(events.body["events"][1]["kind"], "ProfileApplied");
    EXPECT_EQ(events.body["last_seq"], 2);

    EXPECT_EQ(call(h, "POST", "/pending/" + kB.str() + "/profile", kOfficeBody).status, 409);
}

TEST(ControlApi, EventsSinceFilter) {
    DaemonHarness h;
    for (int i = 0; i < 5; ++i) h.daemon.on_detector_event(SafeSiteEvent{"h" + std::to_string(i), {}});
    for (std::uint64_t n = 0; n <= 5; ++n) {
        const auto r = call(h, "GET", "/events", {}, {{"since", std::to_string(n)}});
        ASSERT_EQ(r.body["events"].size(), 5 - n);
        for (std::size_t i = 0; i < r.body["events"].size(); ++i) EXPECT_EQ(r.body["events"][i]["seq"], n + i + 1);
    }
    EXPECT_EQ(call(h, "GET", "/events", {}, {{"since", "-1"}}).status, 400);
    EXPECT_EQ(call(h, "GET", "/events", {}, {{"timeout", "soon"}}).status, 400);
}

TEST(ControlApi, ProfilesCrud) {
    DaemonHarness h;
    EXPECT_EQ(call(h, "GET", "/profiles/" + kA.str()).status, 404);
    const auto put = call(h, "PUT", "/profiles/" + kA.str(), kOfficeBody);
    ASSERT_EQ(put.status, 200);
    EXPECT_TRUE(put.body["events"].empty());

    const auto show = call(h, "GET", "/profiles/" + kA.str());
    ASSERT_EQ(show.status, 200);
    EXPECT_EQ(profile_from_json(show.body["profile"]), profile_from_json(Json::parse(kOfficeBody)));

    spit(h.repo.base_dir() / "broken", "garbage\n");
    const auto list = call(h, "GET", "/profiles");
    ASSERT_EQ(list.body["profiles"].size(), 2u);
    EXPECT_EQ(list.body["profiles"][0]["network_id"], kA.str());
    EXPECT_EQ(list.body["profiles"][0]["display_name"], "Office");
    EXPECT_EQ(list.body["profiles"][1]["network_id"], "broken");
    EXPECT_TRUE(list.body["profiles"][1].contains("error"));
    EXPECT_EQ(call(h, "GET", "/profiles/broken").status, 500);
}

TEST(ControlApi, ApplyEndpoint) {
    DaemonHarness h;
    EXPECT_EQ(call(h, "POST", "/profiles/" + kA.str() + "/apply").status, 404);
    call(h, "PUT", "/profiles/" + kA.str(), kOfficeBody);
    const auto r = call(h, "POST", "/profiles/" + kA.str() + "/apply");
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(r.body["events"][0]["kind"], "ProfileApplied");
    EXPECT_EQ(h.launcher.launched, std::vector<std::string>{"thunderbird"});
}

TEST(ControlApi, BadInput) {
    DaemonHarness h;
    EXPECT_EQ(call(h, "PUT", "/profiles/a b", kOfficeBody).status, 400);
    EXPECT_EQ(call(h, "PUT", "/profiles/A", "{not json").status, 400);
    EXPECT_EQ(call(h, "PUT", "/profiles/A", R"({"is_home":"yes"})").status, 400);
    EXPECT_EQ(call(h, "PUT", "/profiles/A", R"({"default_media":{"mp4":"vlc"}})").status, 400);
    EXPECT_EQ(call(h, "DELETE", "/profiles/A").status, 404);
    EXPECT_EQ(call(h, "GET", "/nowhere").status, 404);
    EXPECT_EQ(call(h, "POST", "/replay", "{}").status, 400);
    EXPECT_EQ(call(h, "POST", "/replay", R"({"capture":"/nonexistent.pcap"})").status, 404);
    EXPECT_EQ(call(h, "POST", "/replay", R"({"capture":"x","is_home":1})").status, 400);
}

TEST(ControlApi, Replay) {
    DaemonHarness h;
    const Json body{{"capture", fixture("captures/media.pcap").string()}, {"is_home", false}};
    const auto r = call(h, "POST", "/replay", body.dump());
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(r.body["frames"], 52);
    EXPECT_EQ(r.body["undecodable"], 0);
    ASSERT_EQ(r.body["events"].size(), 1u);
    EXPECT_EQ(r.body["events"][0]["payload"]["dst_port"], 50123);
    EXPECT_TRUE(call(h, "POST", "/replay", body.dump()).body["events"].empty());

    const Json home{{"capture", fixture("captures/media.pcap").string()}, {"is_home", true}};
    EXPECT_TRUE(call(h, "POST", "/replay", home.dump()).body["events"].empty());
}

TEST(ControlApi, OverHttp) {
    DaemonHarness h;
    const auto addr = h.serve();
    httplib::Client client("http://" + addr);
    h.daemon.tick(kB);

    auto status = client.Get("/status");
    ASSERT_TRUE(status);
    EXPECT_EQ(status->status, 200);
    EXPECT_EQ(Json::parse(status->body)["state"], "pending");

    auto conflict = client.Post("/pending/C/profile", kOfficeBody, "application/json");
    ASSERT_TRUE(conflict);
    EXPECT_EQ(conflict->status, 409);

    auto missing = client.Get("/no/such/route");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    EXPECT_EQ(Json::parse(missing->body)["code"], 404);

    // long poll returns as soon as the submission lands
    std::thread submit([&] {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        httplib::Client c2("http://" + addr);
        c2.Post("/pending/" + kB.str() + "/profile", kOfficeBody, "application/json");
    });
    const auto t0 = std::chrono::steady_clock::now();
    auto polled = client.Get("/events?since=1&timeout=10");
    submit.join();
    ASSERT_TRUE(polled);
    EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(5));
    const auto events = Json::parse(polled->body)["events"];
    ASSERT_EQ(events.size(), 1u);
    EXPECT_EQ(events[0]["kind"], "ProfileApplied");
}

}  // namespace
}  // namespace netprofile
