/**
 * The playground page: an editor, a Run button, and an output pane where
 * menus become button rows, read prompts become a text box, and the final
 * result becomes a bindings table. Stray clicks outside the awaiting phases
 * are ignored by the state machine, so the DOM never needs to race it.
 */

import { SessionClient } from "./client";
import { replay } from "./replay";
import type { ReplayOutcome } from "./replay";
import { encodeAction } from "./protocol";
import type { SessionAction } from "./protocol";
import type { TranscriptEntry } from "./state";
import type { Transport } from "./transport";

export interface Sample {
  name: string;
  source: string;
}

export interface PlaygroundOptions {
  /** Opens a fresh transport per run (and per replay). */
  connect: () => Transport;
  /** Programs offered in the sample picker. */
  samples?: Sample[];
}

export interface ReplayVerdict extends ReplayOutcome {
  matched: boolean;
}

export interface PlaygroundHandle {
  client: () => SessionClient | null;
  actionLog: () => readonly SessionAction[];
  /** Replays the last finished run headlessly and reports the comparison. */
  replayLast: () => Promise<ReplayVerdict>;
  root: HTMLElement;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  if (text !== "") {
    node.textContent = text;
  }
  return node;
}

export function mountPlayground(root: HTMLElement, opts: PlaygroundOptions): PlaygroundHandle {
  const samples = opts.samples ?? [];

  const picker = el("select", { id: "sample", title: "sample programs" });
  for (const sample of samples) {
    picker.appendChild(el("option", { value: sample.name }, sample.name));
  }
  const editor = el("textarea", { id: "editor", spellcheck: "false", rows: "12" });
  editor.value = samples[0]?.source ?? "";
  picker.addEventListener("change", () => {
    const chosen = samples.find((s) => s.name === picker.value);
    if (chosen !== undefined) {
      editor.value = chosen.source;
    }
  });

  const runBtn = el("button", { id: "run" }, "Run");
  const stopBtn = el("button", { id: "stop", disabled: "" }, "Stop");
  const replayBtn = el("button", { id: "replay", disabled: "" }, "Replay log");
  const status = el("span", { id: "status" }, "ready");

  const output = el("div", { id: "output" });
  const actionsPane = el("pre", { id: "actions" });
  const verdict = el("div", { id: "replay-verdict" });

  const toolbar = el("div", { class: "toolbar" });
  toolbar.append(picker, runBtn, stopBtn, replayBtn, status);
  const workspace = el("div", { class: "workspace" });
  const left = el("div", { class: "pane" });
  left.append(el("h2", {}, "program"), editor);
  const right = el("div", { class: "pane" });
  right.append(el("h2", {}, "session"), output, verdict);
  workspace.append(left, right);
  const logPane = el("div", { class: "pane" });
  logPane.append(el("h2", {}, "action log"), actionsPane);
  root.append(toolbar, workspace, logPane);

  let client: SessionClient | null = null;
  let lastLog: SessionAction[] = [];

  function setStatus(text: string): void {
    status.textContent = text;
  }

  function renderMenu(entry: TranscriptEntry & { kind: "menu" }, active: boolean): HTMLElement {
    const row = el("div", { class: `menu ${entry.choiceKind}` });
    entry.captions.forEach((caption, i) => {
      const button = el("button", { class: "choice", "data-index": String(i + 1) }, caption);
      if (!active) {
        button.disabled = true;
      } else {
        button.addEventListener("click", () => client?.choose(i + 1));
      }
      row.appendChild(button);
    });
    return row;
  }

  function renderPrompt(entry: TranscriptEntry & { kind: "prompt" }, active: boolean): HTMLElement {
    const row = el("div", { class: "prompt" });
    row.appendChild(el("label", {}, `read ${entry.var}`));
    const box = el("input", { class: "readbox", type: "text" });
    const submit = el("button", { class: "submit" }, "OK");
    if (!active) {
      box.disabled = true;
      submit.disabled = true;
    } else {
      const send = () => client?.submitInput(box.value);
      submit.addEventListener("click", send);
      box.addEventListener("keydown", (ev) => {
        if ((ev as KeyboardEvent).key === "Enter") {
          send();
        }
      });
    }
    row.append(box, submit);
    return row;
  }

  function renderResult(entry: TranscriptEntry & { kind: "result" }): HTMLElement {
    const block = el("div", { class: `result ${entry.status}` });
    const caption =
      entry.status === "success" ? "success" : `failure: ${entry.reason || "unknown"}`;
    block.appendChild(el("div", { class: "banner" }, caption));
    const names = Object.keys(entry.bindings).sort();
    if (names.length > 0) {
      const table = el("table", { class: "bindings" });
      for (const name of names) {
        const row = el("tr");
        row.append(el("td", {}, name), el("td", {}, entry.bindings[name] ?? ""));
        table.appendChild(row);
      }
      block.appendChild(table);
    }
    return block;
  }

  function render(): void {
    const session = client?.session ?? null;
    output.replaceChildren();
    if (session === null) {
      return;
    }
    const last = session.transcript.length - 1;
    session.transcript.forEach((entry, i) => {
      switch (entry.kind) {
        case "menu":
          output.appendChild(renderMenu(entry, i === last && session.phase === "awaiting_choice"));
          break;
        case "prompt":
          output.appendChild(
            renderPrompt(entry, i === last && session.phase === "awaiting_input"),
          );
          break;
        case "print":
          output.appendChild(el("div", { class: "console-line" }, entry.text));
          break;
        case "trace":
          output.appendChild(el("div", { class: "trace-line" }, entry.line));
          break;
        case "result":
          output.appendChild(renderResult(entry));
          break;
      }
    });
    actionsPane.textContent = session.actionLog.map(encodeAction).join("\n");
    const finished = session.phase === "finished";
    runBtn.disabled = !finished && session.phase !== "editing";
    stopBtn.disabled = finished || session.phase === "editing";
    lastLog = [...session.actionLog];
    replayBtn.disabled = !(finished && lastLog.length > 0);
    if (finished) {
      setStatus(session.result?.status === "success" ? "finished: success" : "finished: failure");
    } else {
      setStatus(session.phase.replace("_", " "));
    }
  }

  function startRun(): void {
    verdict.textContent = "";
    client = new SessionClient(opts.connect(), {
      onUpdate: render,
      onDisconnect: () => setStatus("connection lost"),
      onProtocolError: (err) => setStatus(`protocol error: ${err.message}`),
    });
    client.run(editor.value);
    render();
  }

  async function replayLast(): Promise<ReplayVerdict> {
    const live = client;
    if (live === null || live.result === null) {
      throw new Error("nothing finished to replay");
    }
    const outcome = await replay(opts.connect(), lastLog);
    const matched =
      JSON.stringify(outcome.transcript) === JSON.stringify(live.session.transcript);
    verdict.textContent = matched
      ? `replay matched the live transcript (${outcome.transcript.length} entries)`
      : "replay diverged from the live transcript";
    verdict.className = matched ? "ok" : "bad";
    return { ...outcome, matched };
  }

  runBtn.addEventListener("click", () => {
    if (!runBtn.disabled) {
      startRun();
    }
  });
  stopBtn.addEventListener("click", () => client?.cancel());
  replayBtn.addEventListener("click", () => {
    replayLast().catch((err) => {
      verdict.textContent = `replay failed: ${err instanceof Error ? err.message : err}`;
      verdict.className = "bad";
    });
  });

  return {
    client: () => client,
    actionLog: () => lastLog,
    replayLast,
    root,
  };
}
