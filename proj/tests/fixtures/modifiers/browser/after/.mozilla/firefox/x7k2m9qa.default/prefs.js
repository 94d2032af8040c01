// Mozilla User Preferences

// DO NOT EDIT THIS FILE.
//
// If you make changes to this file while the application is running,
// the changes will be overwritten when the application exits.
//
// To change a preference value, you can either:
// - modify it via the UI (e.g. via about:config in the browser); or
// - set it within a user.js file in your profile.

user_pref("app.update.lastUpdateTime.addon-background-update-timer", 1696843201);
user_pref("browser.download.dir", "/home/user/Downloads");
user_pref("browser.startup.homepage", "http://www.office.com");
user_pref("browser.startup.page", 1);
user_pref("network.cookie.cookieBehavior", 5);
