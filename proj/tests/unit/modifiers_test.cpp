#include <gtest/gtest.h>

#include "line_diff.hpp"
#include "netprofile/modifiers.hpp"
#include "temp_dir.hpp"

namespace netprofile {
namespace {

namespace fs = std::filesystem;
using testing::copy_tree;
using testing::fixture;
using testing::slurp;
using testing::TempDir;

const std::string kOfficeUrl = "http://www.office.com";
const std::string kDefaultPrefs = ".mozilla/firefox/x7k2m9qa.default/prefs.js";
const std::string kWorkPrefs = ".mozilla/firefox/p3n8w1zz.work/prefs.js";
const std::string kAppendPrefs = ".mozilla/firefox/Profiles/q1w2e3r4.default/prefs.js";
const std::string kMimeapps = ".local/share/applications/mimeapps.list";
const std::string kAccounts = ".purple/accounts.xml";
const std::string kFacebook = "someaccountname@chat.facebook.com/";
const std::string kWork = "work.user@talk.example.org/Office";

struct Sandbox {
    TempDir dir;
    explicit Sandbox(const std::string& fixture_name) { copy_tree(fixture("modifiers/" + fixture_name + "/before"), dir.path()); }
    [[nodiscard]] const fs::path& root() const { return dir.path(); }
    [[nodiscard]] std::string read(const std::string& rel) const { return slurp(root() / rel); }
};

std::string expected(const std::string& fixture_name, const std::string& rel) {
    return slurp(fixture("modifiers/" + fixture_name + "/after/" + rel));
}

std::string before(const std::string& fixture_name, const std::string& rel) {
    return slurp(fixture("modifiers/" + fixture_name + "/before/" + rel));
}

TEST(BrowserModifier, RewritesOnlyTheUrl) {
    Sandbox box("browser");
    const auto report = browser_homepage_apply(kOfficeUrl, box.root());
    EXPECT_TRUE(report.changed);
    ASSERT_EQ(report.details.size(), 1u);
    EXPECT_EQ(report.details[0].path, kDefaultPrefs);
    EXPECT_EQ(box.read(kDefaultPrefs), expected("browser", kDefaultPrefs));
    EXPECT_EQ(box.read(kWorkPrefs), before("browser", kWorkPrefs));

    const auto diff = testing::diff_lines(before("browser", kDefaultPrefs), box.read(kDefaultPrefs));
    ASSERT_EQ(diff.added.size(), 1u);
    EXPECT_EQ(diff.added[0], "user_pref(\"browser.startup.homepage\", \"http://www.office.com\");");
}

TEST(BrowserModifier, SecondRunUnchanged) {
    Sandbox box("browser");
    browser_homepage_apply(kOfficeUrl, box.root());
    const auto first = box.read(kDefaultPrefs);
    const auto report = browser_homepage_apply(kOfficeUrl, box.root());
    EXPECT_FALSE(report.changed);
    EXPECT_TRUE(report.details.empty());
    EXPECT_EQ(box.read(kDefaultPrefs), first);
}

TEST(BrowserModifier, AppendsMissingPreference) {
    Sandbox box("browser_append");
    const auto report = browser_homepage_apply(kOfficeUrl, box.root());
    EXPECT_TRUE(report.changed);
    EXPECT_EQ(box.read(kAppendPrefs), expected("browser_append", kAppendPrefs));
    EXPECT_FALSE(browser_homepage_apply(kOfficeUrl, box.root()).changed);
}

TEST(BrowserModifier, QuotesAreEscaped) {
    Sandbox box("browser_append");
    browser_homepage_apply("http://x/\"q\"", box.root());
    EXPECT_NE(box.read(kAppendPrefs).find(R"("http://x/\"q\"")"), std::string::npos);
    EXPECT_FALSE(browser_homepage_apply("http://x/\"q\"", box.root()).changed);
}

TEST(BrowserModifier, MissingProfilesIni) {
    TempDir empty;
    try {
        browser_homepage_apply(kOfficeUrl, empty.path());
        FAIL();
    } catch (const ModifierError& e) {
        EXPECT_EQ(e.code(), ModifierErrorCode::MissingProfilesIni);
    }
}

TEST(BrowserModifier, MissingPathKey) {
    TempDir box;
    testing::spit(box.path() / ".mozilla/firefox/profiles.ini", "[General]\nStartWithLastProfile=1\n\n[Profile0]\nName=default\n");
    try {
        browser_homepage_apply(kOfficeUrl, box.path());
        FAIL();
    } catch (const ModifierError& e) {
        EXPECT_EQ(e.code(), ModifierErrorCode::MissingPathKey);
    }
}

TEST(MediaModifier, RewritesAndInserts) {
    Sandbox box("media");
    const std::map<std::string, std::string> media{{"video/mp4", "totem"}, {"audio/mpeg", "rhythmbox"}, {"video/webm", "totem"}};
    const auto report = default_media_apply(media, box.root());
    EXPECT_TRUE(report.changed);
    EXPECT_EQ(report.details.size(), 2u);
    EXPECT_EQ(box.read(kMimeapps), expected("media", kMimeapps));

    const auto second = default_media_apply(media, box.root());
    EXPECT_FALSE(second.changed);
    EXPECT_EQ(box.read(kMimeapps), expected("media", kMimeapps));
}

TEST(MediaModifier, EmptyMapUnchanged) {
    Sandbox box("media");
    EXPECT_FALSE(default_media_apply({}, box.root()).changed);
    EXPECT_EQ(box.read(kMimeapps), before("media", kMimeapps));
}

TEST(MediaModifier, CreatesFileAndSection) {
    TempDir box;
    const auto report = default_media_apply({{"video/mp4", "vlc.desktop"}}, box.path());
    EXPECT_TRUE(report.changed);
    EXPECT_EQ(slurp(box.path() / kMimeapps), "[Default Applications]\nvideo/mp4=vlc.desktop\n");
}

TEST(MediaModifier, ReportNamesReplacedValue) {
    TempDir box;
    const std::string old_app = "org.example.VeryLongPlayerName.desktop";
    testing::spit(box.path() / kMimeapps, "[Default Applications]\nvideo/mp4=" + old_app + "\n");
    const auto report = default_media_apply({{"video/mp4", "totem"}}, box.path());
    ASSERT_EQ(report.details.size(), 1u);
    EXPECT_EQ(report.details[0].path, kMimeapps);
    EXPECT_EQ(report.details[0].description, "video/mp4 -> totem.desktop (was " + old_app + ")");
}

TEST(MediaModifier, PreservesCrLf) {
    TempDir box;
    testing::spit(box.path() / kMimeapps, "[Default Applications]\r\nvideo/mp4=vlc.desktop\r\n");
    default_media_apply({{"video/mp4", "totem"}}, box.path());
    EXPECT_EQ(slurp(box.path() / kMimeapps), "[Default Applications]\r\nvideo/mp4=totem.desktop\r\n");
}

TEST(MessengerModifier, ActivatesTargetDeactivatesOthers) {
    Sandbox box("messenger");
    const auto report = messenger_apply(kFacebook, box.root());
    EXPECT_TRUE(report.changed);
    EXPECT_EQ(report.details.size(), 4u);
    EXPECT_EQ(box.read(kAccounts), expected("messenger", kAccounts));

    const auto second = messenger_apply(kFacebook, box.root());
    EXPECT_FALSE(second.changed);
    EXPECT_EQ(box.read(kAccounts), expected("messenger", kAccounts));
}

TEST(MessengerModifier, SwitchingBackRestoresOriginal) {
    Sandbox box("messenger");
    messenger_apply(kFacebook, box.root());
    EXPECT_TRUE(messenger_apply(kWork, box.root()).changed);
    EXPECT_EQ(box.read(kAccounts), before("messenger", kAccounts));
}

TEST(MessengerModifier, AccountNotFound) {
    Sandbox box("messenger");
    try {
        messenger_apply("nobody@example.org", box.root());
        FAIL();
    } catch (const ModifierError& e) {
        EXPECT_EQ(e.code(), ModifierErrorCode::AccountNotFound);
    }
    EXPECT_EQ(box.read(kAccounts), before("messenger", kAccounts));
}

TEST(MessengerModifier, MalformedXml) {
    TempDir box;
    testing::spit(box.path() / kAccounts, "<account><account><name>x</name></account>");
    try {
        messenger_apply("x", box.path());
        FAIL();
    } catch (const ModifierError& e) {
        EXPECT_EQ(e.code(), ModifierErrorCode::MalformedXml);
    }
}

TEST(EmailModifier, LaunchesOnce) {
    RecordingLauncher launcher;
    const auto report = email_apply("thunderbird", launcher);
    EXPECT_EQ(launcher.launched, std::vector<std::string>{"thunderbird"});
    EXPECT_EQ(report.launched, "thunderbird");
    EXPECT_FALSE(report.changed);
}

TEST(EmailModifier, EmptyCommandNoop) {
    RecordingLauncher launcher;
    const auto report = email_apply("", launcher);
    EXPECT_FALSE(report.changed);
    EXPECT_FALSE(report.launched);
    EXPECT_EQ(launcher.attempts, 0u);
}

TEST(EmailModifier, FailureNoRetry) {
    RecordingLauncher launcher(true);
    try {
        email_apply("thunderbird", launcher);
        FAIL();
    } catch (const ModifierError& e) {
        EXPECT_EQ(e.code(), ModifierErrorCode::LaunchFailure);
    }
    EXPECT_EQ(launcher.attempts, 1u);
}

NetworkProfile office_profile() {
    NetworkProfile p;
    p.homepage_url = kOfficeUrl;
    p.default_media = {{"video/mp4", "totem"}, {"video/webm", "totem"}};
    p.messenger_account = kFacebook;
    p.email_command = "thunderbird";
    return p;
}

void stage_all(const fs::path& root) {
    for (const char* name : {"browser", "media", "messenger"}) copy_tree(fixture(std::string("modifiers/") + name + "/before"), root);
}

TEST(ApplyProfile, OfficeProfile) {
    TempDir box;
    stage_all(box.path());
    RecordingLauncher launcher;
    const auto reports = apply_profile(office_profile(), box.path(), launcher);
    ASSERT_EQ(reports.size(), 4u);
    EXPECT_EQ(reports[0].modifier_name, "browser");
    EXPECT_TRUE(reports[0].changed);
    EXPECT_EQ(reports[1].modifier_name, "media");
    EXPECT_TRUE(reports[1].changed);
    EXPECT_EQ(reports[2].modifier_name, "messenger");
    EXPECT_TRUE(reports[2].changed);
    EXPECT_EQ(reports[3].modifier_name, "email");
    EXPECT_EQ(reports[3].launched, "thunderbird");
    for (const auto& r : reports) EXPECT_FALSE(r.error) << r.modifier_name;
}

TEST(ApplyProfile, SecondRunAllUnchanged) {
    TempDir box;
    stage_all(box.path());
    RecordingLauncher launcher;
    apply_profile(office_profile(), box.path(), launcher);
    const auto prefs = slurp(box.path() / kDefaultPrefs);
    const auto mime = slurp(box.path() / kMimeapps);
    const auto xml = slurp(box.path() / kAccounts);
    for (const auto& r : apply_profile(office_profile(), box.path(), launcher)) {
        EXPECT_FALSE(r.changed) << r.modifier_name;
        EXPECT_TRUE(r.details.empty()) << r.modifier_name;
    }
    EXPECT_EQ(slurp(box.path() / kDefaultPrefs), prefs);
    EXPECT_EQ(slurp(box.path() / kMimeapps), mime);
    EXPECT_EQ(slurp(box.path() / kAccounts), xml);
}

TEST(ApplyProfile, BrowserFailureDoesNotStopOthers) {
    TempDir box;
    copy_tree(fixture("modifiers/media/before"), box.path());
    RecordingLauncher launcher;
    const auto reports = apply_profile(office_profile(), box.path(), launcher);
    ASSERT_EQ(reports.size(), 4u);
    ASSERT_TRUE(reports[0].error);
    EXPECT_EQ(reports[0].error->code, ModifierErrorCode::MissingProfilesIni);
    EXPECT_TRUE(reports[1].changed);
    ASSERT_TRUE(reports[2].error);
    EXPECT_EQ(reports[3].launched, "thunderbird");
}

TEST(ApplyProfile, DisabledBackendDoesNotAffectOthers) {
    TempDir a;
    TempDir b;
    stage_all(a.path());
    stage_all(b.path());
    RecordingLauncher la;
    RecordingLauncher lb;
    const auto all = apply_profile(office_profile(), a.path(), la);
    const auto some = apply_profile(office_profile(), b.path(), lb, BackendSet{.browser = false, .messenger = false});
    ASSERT_EQ(some.size(), 2u);
    EXPECT_EQ(some[0], all[1]);
    EXPECT_EQ(some[1], all[3]);
    EXPECT_EQ(slurp(a.path() / kMimeapps), slurp(b.path() / kMimeapps));
    EXPECT_EQ(slurp(b.path() / kDefaultPrefs), before("browser", kDefaultPrefs));
}

}  // namespace
}  // namespace netprofile
