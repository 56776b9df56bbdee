#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tagwm/error.hpp"

namespace {

constexpr int kValidationExit = 2;
constexpr int kIoExit = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual latent watermark embedding, tamper localization and tamper-aware decoding"};
  app.require_subcommand(1);
  tagwm::cli::add_commands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationExit;
  } catch (const tagwm::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoExit;
  } catch (const tagwm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationExit;
  }
  return 0;
}
