#include <iostream>

#include "causal_horizon/errors.hpp"
#include "causal_horizon/io.hpp"

int main(int argc, char** argv) {
    try {
        return ch::run_command(ch::parse_config(argc, argv));
    } catch (const ch::HelpRequested& h) {
        std::cout << h.what();
        return 0;
    } catch (const ch::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
