/**
 * Wire protocol spoken with the session service: newline-delimited JSON,
 * one object per line, strictly shaped on both sides.
 */

export interface ChoiceOption {
  label: string;
  display: string;
}

export interface ChoiceRequestEvent {
  event: "choice_request";
  id: number;
  kind: "kchoose" | "mchoose";
  options: ChoiceOption[];
}

export interface ReadRequestEvent {
  event: "read_request";
  id: number;
  var: string;
}

export interface PrintEvent {
  event: "print";
  value: string;
}

export interface TraceEvent {
  event: "trace";
  line: string;
}

export interface ResultEvent {
  event: "result";
  status: "success" | "failure";
  reason: string | null;
  bindings: Record<string, string>;
}

export type SessionEvent =
  | ChoiceRequestEvent
  | ReadRequestEvent
  | PrintEvent
  | TraceEvent
  | ResultEvent;

export interface LoadAction {
  action: "load";
  source: string;
  goal?: string;
}

export interface ChoiceAction {
  action: "choice";
  id: number;
  index: number;
}

export interface InputAction {
  action: "input";
  id: number;
  value: string;
}

export interface CancelAction {
  action: "cancel";
}

export type SessionAction = LoadAction | ChoiceAction | InputAction | CancelAction;

export class ProtocolError extends Error {}

function fail(message: string): never {
  throw new ProtocolError(message);
}

// the server rejects booleans where numbers are expected; match its strictness
function asId(value: unknown, context: string): number {
  if (typeof value !== "number" || !Number.isInteger(value) || value < 1) {
    fail(`${context}: bad id ${JSON.stringify(value)}`);
  }
  return value;
}

function asString(value: unknown, context: string): string {
  if (typeof value !== "string") {
    fail(`${context}: expected a string, got ${JSON.stringify(value)}`);
  }
  return value;
}

/** Parse one event line from the server. Throws ProtocolError on any misshape. */
export function decodeEvent(line: string): SessionEvent {
  let raw: unknown;
  try {
    raw = JSON.parse(line);
  } catch {
    fail(`not JSON: ${line.trim()}`);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    fail("event is not an object");
  }
  const obj = raw as Record<string, unknown>;
  switch (obj.event) {
    case "choice_request": {
      const kind = obj.kind;
      if (kind !== "kchoose" && kind !== "mchoose") {
        fail(`choice_request: bad kind ${JSON.stringify(kind)}`);
      }
      if (!Array.isArray(obj.options) || obj.options.length === 0) {
        fail("choice_request: options must be a nonempty array");
      }
      const options = obj.options.map((o: unknown, i: number) => {
        const opt = o as Record<string, unknown>;
        return {
          label: asString(opt?.label, `option ${i + 1}`),
          display: asString(opt?.display, `option ${i + 1}`),
        };
      });
      return { event: "choice_request", id: asId(obj.id, "choice_request"), kind, options };
    }
    case "read_request":
      return {
        event: "read_request",
        id: asId(obj.id, "read_request"),
        var: asString(obj.var, "read_request"),
      };
    case "print":
      return { event: "print", value: asString(obj.value, "print") };
    case "trace":
      return { event: "trace", line: asString(obj.line, "trace") };
    case "result": {
      const status = obj.status;
      if (status !== "success" && status !== "failure") {
        fail(`result: bad status ${JSON.stringify(status)}`);
      }
      const rawBindings = obj.bindings;
      if (typeof rawBindings !== "object" || rawBindings === null || Array.isArray(rawBindings)) {
        fail("result: bindings must be an object");
      }
      const bindings: Record<string, string> = {};
      for (const [k, v] of Object.entries(rawBindings)) {
        bindings[k] = asString(v, `binding ${k}`);
      }
      // success carries reason null, failure a reason string
      const reason = obj.reason === null ? null : asString(obj.reason, "result");
      return { event: "result", status, reason, bindings };
    }
    default:
      fail(`unknown event ${JSON.stringify(obj.event)}`);
  }
}

/** Serialize one action as a single line, field order matching the server's docs. */
export function encodeAction(action: SessionAction): string {
  let shaped: Record<string, unknown>;
  switch (action.action) {
    case "load":
      shaped =
        action.goal === undefined
          ? { action: "load", source: action.source }
          : { action: "load", source: action.source, goal: action.goal };
      break;
    case "choice":
      shaped = { action: "choice", id: action.id, index: action.index };
      break;
    case "input":
      shaped = { action: "input", id: action.id, value: action.value };
      break;
    case "cancel":
      shaped = { action: "cancel" };
      break;
  }
  return JSON.stringify(shaped);
}
