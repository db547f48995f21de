#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "possdiag/service.hpp"

int main(int argc, char** argv) {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_dir;

  CLI::App app{"Session-oriented diagnosis service", "possdiag_server"};
  app.add_option("--host", host, "address to bind");
  app.add_option("--port", port, "port to listen on");
  app.add_option("--log-dir", log_dir, "directory of per-session replay logs (restored at startup)");
  CLI11_PARSE(app, argc, argv);

  std::optional<std::filesystem::path> dir;
  if (!log_dir.empty()) dir = log_dir;
  possdiag::service::SessionStore store(dir);
  try {
    if (const auto n = store.restore(); n > 0) std::cerr << "restored " << n << " session(s)\n";
  } catch (const std::exception& e) {
    std::cerr << "cannot restore sessions: " << e.what() << "\n";
    return 3;
  }

  httplib::Server server;
  possdiag::service::install_routes(server, store);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 3;
  }
  return 0;
}
