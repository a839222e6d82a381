/**
 * One live session: a transport plus the state machine, with a notification
 * hook so the page can re-render after every change.
 */

import { decodeEvent, encodeAction } from "./protocol";
import type { LoadAction, ResultEvent, SessionAction } from "./protocol";
import { UiSession } from "./state";
import type { Transport } from "./transport";

export interface SessionClientHooks {
  /** Called after every state change (event applied or action sent). */
  onUpdate?: () => void;
  /** Called when the transport drops before a result arrived. */
  onDisconnect?: () => void;
  /** Called on a line the client cannot decode. The session is closed. */
  onProtocolError?: (err: Error) => void;
}

export class SessionClient {
  readonly session = new UiSession();

  constructor(
    private readonly transport: Transport,
    private readonly hooks: SessionClientHooks = {},
  ) {
    transport.onLine((line) => this.receive(line));
    transport.onClose(() => {
      if (this.session.result === null && this.session.phase !== "editing") {
        this.hooks.onDisconnect?.();
      }
    });
  }

  private receive(line: string): void {
    let applied = false;
    try {
      this.session.applyEvent(decodeEvent(line));
      applied = true;
    } catch (err) {
      this.transport.close();
      this.hooks.onProtocolError?.(err instanceof Error ? err : new Error(String(err)));
    }
    if (applied) {
      if (this.session.phase === "finished") {
        this.transport.close();
      }
      this.hooks.onUpdate?.();
    }
  }

  private dispatch(action: SessionAction | null): void {
    if (action !== null) {
      this.transport.send(encodeAction(action));
      this.hooks.onUpdate?.();
    }
  }

  /** Send the program: the whole editor contents, goal defaulted server-side. */
  run(source: string): void {
    const load: LoadAction = { action: "load", source };
    this.dispatch(this.session.start(load));
  }

  /** Answer the outstanding menu by button position (1-based). */
  choose(index: number): void {
    this.dispatch(this.session.choose(index));
  }

  /** Answer the outstanding read prompt. */
  submitInput(value: string): void {
    this.dispatch(this.session.submitInput(value));
  }

  cancel(): void {
    this.dispatch(this.session.cancel());
  }

  get result(): ResultEvent | null {
    return this.session.result;
  }
}
