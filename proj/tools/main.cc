#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "semicrf/commands.h"
#include "semicrf/error.h"

int main(int argc, char** argv) {
    CLI::App app{"neural semi-Markov CRF segmenter"};
    app.require_subcommand(1);

    std::string config_path, train_path, dev_path, out_dir;
    auto* train = app.add_subcommand("train", "train a model");
    train->add_option("--config", config_path, "model/config file")->required();
    train->add_option("--train", train_path, "training corpus")->required();
    train->add_option("--dev", dev_path, "development corpus")->required();
    train->add_option("--out", out_dir, "output directory")->required();

    std::string model_path, input_path, output_path;
    auto* predict = app.add_subcommand("predict", "segment new data");
    predict->add_option("--model", model_path, "checkpoint file")->required();
    predict->add_option("--input", input_path, "input corpus")->required();
    predict->add_option("--output", output_path, "predictions file")->required();

    std::string gold_path, pred_path;
    auto* eval = app.add_subcommand("eval", "score predictions against gold");
    eval->add_option("--gold", gold_path, "gold corpus")->required();
    eval->add_option("--pred", pred_path, "predicted corpus")->required();

    std::string emit_model, raw_path, emit_out;
    std::optional<std::string> emit_sep;
    auto* emit = app.add_subcommand("emit-segmented", "auto-segment a raw corpus");
    emit->add_option("--model", emit_model, "checkpoint file")->required();
    emit->add_option("--raw", raw_path, "raw corpus, one sequence per line")->required();
    emit->add_option("--out", emit_out, "segmented output file")->required();
    emit->add_option("--separator", emit_sep, "segment key joiner (default: model's)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            semicrf::run_train(config_path, train_path, dev_path, out_dir, std::cout, &std::cerr);
        } else if (predict->parsed()) {
            semicrf::run_predict(model_path, input_path, output_path);
        } else if (eval->parsed()) {
            semicrf::run_eval(gold_path, pred_path, std::cout);
        } else if (emit->parsed()) {
            semicrf::run_emit_segmented(emit_model, raw_path, emit_out, emit_sep);
        }
    } catch (const semicrf::config_error& e) {
        std::cerr << "config-error: " << e.what() << "\n";
        return semicrf::kExitConfig;
    } catch (const semicrf::data_error& e) {
        std::cerr << "data-error: " << e.what() << "\n";
        return semicrf::kExitData;
    } catch (const semicrf::checkpoint_error& e) {
        std::cerr << "checkpoint-error: " << e.what() << "\n";
        return semicrf::kExitCheckpoint;
    } catch (const std::exception& e) {
        std::cerr << "internal-error: " << e.what() << "\n";
        return semicrf::kExitInternal;
    }
    return semicrf::kExitOk;
}
