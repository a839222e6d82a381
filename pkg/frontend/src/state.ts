/**
 * Pure session state for the playground: phases, the outstanding request,
 * the rendered transcript, and the action log. No DOM, no transport; the
 * same machine backs the page and the headless replay, which is what makes
 * their transcripts comparable.
 */

import type {
  ChoiceAction,
  ChoiceRequestEvent,
  InputAction,
  LoadAction,
  ReadRequestEvent,
  ResultEvent,
  SessionAction,
  SessionEvent,
} from "./protocol";

export type Phase = "editing" | "running" | "awaiting_choice" | "awaiting_input" | "finished";

export type TranscriptEntry =
  | { kind: "menu"; choiceKind: "kchoose" | "mchoose"; captions: string[] }
  | { kind: "prompt"; var: string }
  | { kind: "print"; text: string }
  | { kind: "trace"; line: string }
  | {
      kind: "result";
      status: "success" | "failure";
      reason: string | null;
      bindings: Record<string, string>;
    };

/** Button captions for a choice request: branch text for kchoose, label for mchoose. */
export function buttonCaptions(req: ChoiceRequestEvent): string[] {
  return req.options.map((o) => (req.kind === "mchoose" ? o.label : o.display));
}

export class StateError extends Error {}

export class UiSession {
  phase: Phase = "editing";
  outstanding: ChoiceRequestEvent | ReadRequestEvent | null = null;
  readonly transcript: TranscriptEntry[] = [];
  readonly actionLog: SessionAction[] = [];
  result: ResultEvent | null = null;

  /** Record the load action and leave the editing phase. One per session. */
  start(load: LoadAction): LoadAction {
    if (this.phase !== "editing") {
      throw new StateError(`cannot start from phase ${this.phase}`);
    }
    this.phase = "running";
    this.actionLog.push(load);
    return load;
  }

  /** Fold one server event into the transcript and phase. */
  applyEvent(ev: SessionEvent): TranscriptEntry {
    if (this.phase === "editing" || this.phase === "finished") {
      throw new StateError(`unexpected ${ev.event} in phase ${this.phase}`);
    }
    let entry: TranscriptEntry;
    switch (ev.event) {
      case "choice_request":
        if (this.phase !== "running") {
          throw new StateError(`choice_request while ${this.phase}`);
        }
        this.outstanding = ev;
        this.phase = "awaiting_choice";
        entry = { kind: "menu", choiceKind: ev.kind, captions: buttonCaptions(ev) };
        break;
      case "read_request":
        if (this.phase !== "running") {
          throw new StateError(`read_request while ${this.phase}`);
        }
        this.outstanding = ev;
        this.phase = "awaiting_input";
        entry = { kind: "prompt", var: ev.var };
        break;
      case "print":
        entry = { kind: "print", text: ev.value };
        break;
      case "trace":
        entry = { kind: "trace", line: ev.line };
        break;
      case "result":
        this.outstanding = null;
        this.phase = "finished";
        this.result = ev;
        entry = {
          kind: "result",
          status: ev.status,
          reason: ev.reason,
          bindings: { ...ev.bindings },
        };
        break;
    }
    this.transcript.push(entry);
    return entry;
  }

  /**
   * Answer the outstanding request by button position (1-based). Returns the
   * action to send, or null when no choice is awaited (stray clicks are
   * ignored, not errors).
   */
  choose(index: number): ChoiceAction | null {
    if (this.phase !== "awaiting_choice" || this.outstanding?.event !== "choice_request") {
      return null;
    }
    return this.answerWith({ action: "choice", id: this.outstanding.id, index });
  }

  /** Answer the outstanding read request. Null outside awaiting_input. */
  submitInput(value: string): InputAction | null {
    if (this.phase !== "awaiting_input" || this.outstanding?.event !== "read_request") {
      return null;
    }
    return this.answerWith({ action: "input", id: this.outstanding.id, value });
  }

  /**
   * Answer with an already-built action (the replay path). The action must
   * match the outstanding request's type and id.
   */
  answerWith<A extends ChoiceAction | InputAction>(action: A): A {
    const req = this.outstanding;
    if (req === null) {
      throw new StateError("no outstanding request to answer");
    }
    const wants = req.event === "choice_request" ? "choice" : "input";
    if (action.action !== wants) {
      throw new StateError(`request ${req.id} needs ${wants}, got ${action.action}`);
    }
    if (action.id !== req.id) {
      throw new StateError(`answer id ${action.id} does not match request id ${req.id}`);
    }
    this.outstanding = null;
    this.phase = "running";
    this.actionLog.push(action);
    return action;
  }

  /** Abandon the run. Null once finished (nothing left to cancel). */
  cancel(): SessionAction | null {
    if (this.phase === "editing" || this.phase === "finished") {
      return null;
    }
    this.outstanding = null;
    this.phase = "running";
    const action = { action: "cancel" } as const;
    this.actionLog.push(action);
    return action;
  }
}
