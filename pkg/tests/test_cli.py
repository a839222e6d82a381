from support import CORPUS, run_cli


def test_success_exit_and_state(tmp_path):
    result = run_cli("run", str(CORPUS / "employee.jbi"), "--input", "1", "--dump-state")
    assert result.returncode == 0
    assert result.stdout == "outcome: success\nstate: {age=31, emp=tom}\n"


def test_prints_reach_stdout_before_outcome():
    result = run_cli("run", str(CORPUS / "tuition.jbi"), "--input", "3")
    assert result.returncode == 0
    assert result.stdout == "2200\noutcome: success\n"


def test_failure_exit_code_and_reason():
    result = run_cli("run", str(CORPUS / "employee.jbi"), "--input", "9")
    assert result.returncode == 1
    assert result.stdout == "outcome: failure(ChoiceOutOfRange)\n"


def test_undefined_procedure_failure():
    result = run_cli("run", str(CORPUS / "employee.jbi"), "--goal", "missing()")
    assert result.returncode == 1
    assert result.stdout == "outcome: failure(NoMatchingProcedure)\n"


def test_exhausted_script_failure():
    result = run_cli("run", str(CORPUS / "double.jbi"), "--input", "")
    assert result.returncode == 1
    assert result.stdout == "outcome: failure(InputExhausted)\n"


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.jbi"
    bad.write_text("proc main( = true.", encoding="utf-8")
    result = run_cli("run", str(bad))
    assert result.returncode == 2
    assert result.stdout == ""
    assert result.stderr.startswith("parse error: ")


def test_goal_parse_error_exit_2():
    result = run_cli("run", str(CORPUS / "employee.jbi"), "--goal", "x = ")
    assert result.returncode == 2


def test_missing_file_exit_3(tmp_path):
    result = run_cli("run", str(tmp_path / "nope.jbi"))
    assert result.returncode == 3
    assert result.stderr.startswith("error: ")


def test_trace_lines_precede_outcome():
    result = run_cli("run", str(CORPUS / "employee.jbi"), "--input", "2", "--trace")
    lines = result.stdout.splitlines()
    assert lines[0] == "#1 R4 main()"
    assert lines[-1] == "outcome: success"
    assert all(line.startswith("#") for line in lines[:-1])


def test_inline_and_file_inputs_identical(tmp_path):
    script = tmp_path / "tokens.txt"
    script.write_text("21\n", encoding="utf-8")
    inline = run_cli("run", str(CORPUS / "double.jbi"), "--input", "21", "--trace", "--dump-state")
    from_file = run_cli(
        "run", str(CORPUS / "double.jbi"), "--input-file", str(script), "--trace", "--dump-state"
    )
    assert inline.returncode == from_file.returncode == 0
    assert inline.stdout == from_file.stdout


def test_reprompt_flag_enables_recovery():
    result = run_cli("run", str(CORPUS / "employee.jbi"), "--input", "9,0,2", "--reprompt", "3")
    assert result.returncode == 0
    strict = run_cli("run", str(CORPUS / "employee.jbi"), "--input", "9,0,2")
    assert strict.returncode == 1


def test_console_mode_prompts(tmp_path):
    result = run_cli("run", str(CORPUS / "employee.jbi"), stdin="2\n")
    assert result.returncode == 0
    assert result.stdout == (
        "1) emp = tom; age = 31\n"
        "2) emp = kim; age = 40\n"
        "3) emp = sue; age = 22\n"
        "choose [1-3]: outcome: success\n"
    )


def test_console_mode_reprompts_by_default():
    result = run_cli("run", str(CORPUS / "employee.jbi"), stdin="9\n2\n")
    assert result.returncode == 0
    assert "invalid choice, try again [1-3]: " in result.stdout


def test_goal_flag_runs_alternate_entry():
    result = run_cli(
        "run", str(CORPUS / "double.jbi"), "--goal", "double(4); print(result)", "--input", ""
    )
    assert result.returncode == 0
    assert result.stdout == "8\noutcome: success\n"


def test_file_required_without_serve():
    result = run_cli("run")
    assert result.returncode == 3
