/**
 * Headless replay: drive a fresh session with a recorded action log and
 * collect the transcript it produces. A faithful recording replayed against
 * the same program yields the same transcript as the live run, because the
 * service is deterministic given the answers.
 */

import { decodeEvent, encodeAction } from "./protocol";
import type { SessionAction } from "./protocol";
import { UiSession } from "./state";
import type { TranscriptEntry } from "./state";
import type { Transport } from "./transport";

export class ReplayError extends Error {}

export interface ReplayOutcome {
  transcript: TranscriptEntry[];
  bindings: Record<string, string>;
  status: "success" | "failure";
  reason: string | null;
}

/**
 * Feed a recorded log through a new transport. The first entry must be the
 * load; each request that arrives consumes the next recorded answer, which
 * must match it by type and id. Resolves when the result event lands.
 */
export function replay(
  transport: Transport,
  log: readonly SessionAction[],
  timeoutMs = 10000,
): Promise<ReplayOutcome> {
  return new Promise((resolve, reject) => {
    const [first, ...answers] = log;
    if (first === undefined || first.action !== "load") {
      reject(new ReplayError("log must start with a load action"));
      return;
    }
    const session = new UiSession();
    let done = false;
    const timer = setTimeout(() => finish(new ReplayError("replay timed out")), timeoutMs);

    function finish(err: Error | null): void {
      if (done) {
        return;
      }
      done = true;
      clearTimeout(timer);
      transport.close();
      if (err !== null) {
        reject(err);
      } else {
        const result = session.result;
        if (result === null) {
          reject(new ReplayError("replay ended without a result"));
          return;
        }
        resolve({
          transcript: session.transcript,
          bindings: result.bindings,
          status: result.status,
          reason: result.reason,
        });
      }
    }

    transport.onLine((line) => {
      try {
        const entry = session.applyEvent(decodeEvent(line));
        if (entry.kind === "result") {
          finish(null);
        } else if (entry.kind === "menu" || entry.kind === "prompt") {
          const next = answers.shift();
          if (next === undefined) {
            throw new ReplayError("log exhausted while the program still asks");
          }
          if (next.action === "load") {
            throw new ReplayError("load action in the middle of the log");
          }
          if (next.action === "cancel") {
            session.cancel();
          } else {
            session.answerWith(next);
          }
          transport.send(encodeAction(next));
        }
      } catch (err) {
        finish(err instanceof Error ? err : new Error(String(err)));
      }
    });
    transport.onClose(() => finish(new ReplayError("connection closed before result")));

    session.start(first);
    transport.send(encodeAction(first));
  });
}
